"""The color-variable shuffle algebra: relabeling, the kernel identity, the
floor-sum identities, the elements Ā / B̄ / A and the wheel conditions.

Color variables z_{i,a} (color i in 1..n, index a >= 1) are stored as the
registry names ``z{(i-1)*6 + a}``, so at most six variables per color.

ζ is never hardcoded: every ζ-dependent function takes a :class:`ZetaConfig`.
The kernel identity and the two combinatorial identities are ζ-free.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .ratfun import Field, RatFun, parse_ratfun, var
from .report import VerificationReport, timed
from .shuffle import bar
from .wrels import alpha

__all__ = [
    "PER_COLOR",
    "color_var",
    "relabel",
    "ColorSymFun",
    "ZetaConfig",
    "default_zeta",
    "kernel_X",
    "kernel_X_rhs",
    "of_check",
    "floor_identity_check",
    "arc_identity_check",
    "make_Abar",
    "make_Bbar",
    "make_Anew",
    "sym",
    "shuffle_product_S",
    "wheel_check",
    "eq_plus_check",
]

PER_COLOR = 6


def color_var(i: int, a: int) -> str:
    if not (1 <= a <= PER_COLOR):
        raise ValueError(f"index {a} out of range for color variables")
    return f"z{(i - 1) * PER_COLOR + a}"


def _arc_name(a: int, i: int) -> str:
    # arc-local names for z_i..z_{j-1} while building kernels
    return f"z{a - i + 1}"


def relabel(n: int, i: int, j: int) -> dict[int, tuple[int, int, int]]:
    """z_a (i <= a < j) -> (color, index, qbar exponent e) meaning z_{color,index} qbar^{e}.

    z_{a0}, z_{a0+n}, z_{a0+2n}, ... become z_{ā1}, z_{ā2} qbar^{-2}, z_{ā3} qbar^{-4}, ...
    """
    out = {}
    for a in range(i, j):
        m = (a - i) // n
        out[a] = (bar(a, n), m + 1, -2 * m)
    return out


def _relabel_subs(n: int, i: int, j: int) -> dict[str, RatFun]:
    F = Field(n)
    return {
        _arc_name(a, i): var(color_var(c, idx), n) * F.qbar_frac(e * n)
        for a, (c, idx, e) in relabel(n, i, j).items()
    }


def _degree(n: int, i: int, j: int) -> tuple[int, ...]:
    d = [0] * n
    for a in range(i, j):
        d[bar(a, n) - 1] += 1
    return tuple(d)


@dataclass(frozen=True)
class ColorSymFun:
    """A rational function in color variables with its degree vector."""

    n: int
    d: tuple[int, ...]
    f: RatFun
    sign: int = 1

    def variables(self) -> list[str]:
        return [color_var(i + 1, a + 1) for i in range(self.n) for a in range(self.d[i])]

    def is_zero(self) -> bool:
        return self.f.is_zero()

    def is_color_symmetric(self) -> bool:
        for i in range(self.n):
            for a in range(1, self.d[i]):
                u, v = color_var(i + 1, a), color_var(i + 1, a + 1)
                if self.f.rename({u: v, v: u}) != self.f:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, ColorSymFun):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.n == other.n and self.d == other.d and self.f == other.f

    def __hash__(self):
        return hash((self.n, self.d, self.f))


@dataclass(frozen=True)
class ZetaConfig:
    """ζ_{i,i'}(x) for colors i, i' in 1..n, each a rational function of ``x``."""

    n: int
    table: Mapping[tuple[int, int], RatFun]
    label: str = "custom"

    def __call__(self, i: int, ip: int, arg: RatFun) -> RatFun:
        key = (bar(i, self.n), bar(ip, self.n))
        if key not in self.table:
            raise KeyError(f"missing ζ entry for colors {key}")
        return self.table[key].subs({"x": arg})

    def fingerprint(self) -> str:
        blob = json.dumps({f"{a},{b}": str(v) for (a, b), v in sorted(self.table.items())}, sort_keys=True)
        return f"{self.label}:{hashlib.sha256(blob.encode()).hexdigest()[:12]}"

    @classmethod
    def from_json(cls, path: str | Path, n: int) -> "ZetaConfig":
        raw = json.loads(Path(path).read_text())
        entries = raw.get("entries", raw)
        table = {}
        for key, text in entries.items():
            a, b = (int(s) for s in key.split(","))
            table[(a, b)] = parse_ratfun(text, n)
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                if (a, b) not in table:
                    raise KeyError(f"missing ζ entry for colors {(a, b)}")
        return cls(n, table, raw.get("label", Path(path).stem))


def default_zeta(n: int) -> ZetaConfig:
    """The shipped ζ table.  A convention, not something the construction fixes.

    Entries are read in arc variables, as in the formulas for Ā, B̄ and A
    (indices mod n):

        ζ_{i+1,i}(x) = 1 - x q^{-2}
        ζ_{i,i+1}(x) = 1 - x

    with the two factors multiplied when both apply (n = 1, 2) and 1 for every
    other pair.  With this table Ā, B̄ and A all pass wheel_check at small
    degree for n = 1, 2, 3.  A same-color factor (1 - y q^{-2}) / (1 - y) is
    left out: written in arc variables its pole moves with the number of
    windings.  Supply a table with ``--zeta`` to change any of this.
    """
    return ZetaConfig(n, _default_table(n), "default")


def _default_table(n: int) -> dict[tuple[int, int], RatFun]:
    x, q = var("x", n), Field(n).q
    table = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            f = RatFun(1, n=n)
            if (a - b) % n == 1 % n:
                f = f * (1 - x / q**2)
            if (b - a) % n == 1 % n:
                f = f * (1 - x)
            table[(a, b)] = f
    return table


# ---------------------------------------------------------------------------
# the kernel identity


def _paths_down(top: int, bottom: int, k: int) -> Iterable[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(c, ks) with top = c_0 > c_1 > ... > c_t = bottom and strictly decreasing
    positive slopes (c_{s-1} - c_s) / k_s."""
    total = top - bottom

    def rec(remaining_d, remaining_k, last):
        if remaining_d == 0 and remaining_k == 0:
            yield (), ()
            return
        if remaining_d <= 0 or remaining_k <= 0:
            return
        for d in range(1, remaining_d + 1):
            for kk in range(1, remaining_k + 1):
                sl = Fraction(d, kk)
                if last is not None and sl >= last:
                    continue
                for ds, ks in rec(remaining_d - d, remaining_k - kk, sl):
                    yield (d,) + ds, (kk,) + ks

    for ds, ks in rec(total, k, None):
        c = [top]
        for d in ds:
            c.append(c[-1] - d)
        yield tuple(c), ks


def _block_exponent(a: int, lo: int, d: int, k: int) -> int:
    return ((a - lo + 1) * k) // d - ((a - lo) * k) // d


def _paths_up(bottom: int, top: int, k: int) -> Iterable[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(c, ks) with bottom = c_0 < ... < c_t = top and 0 > slope_1 > slope_2 > ...,
    slope_s = (c_{s-1} - c_s) / k_s."""
    for c, ks in _paths_down(top, bottom, k):
        # reversing a descending path with decreasing positive slopes gives an
        # ascending one whose negative slopes decrease
        yield tuple(reversed(c)), tuple(reversed(ks))


def kernel_X(n: int, i: int, j: int, k: int, side: int = 1) -> RatFun:
    """The finite kernel sum X(z_i, ..., z_{j-1}).

    ``side = +1``: paths from j down to i with positive decreasing slopes and
    weight p^{(2α(v) - 2(k-1)(j-i) + 2k)/n}.  ``side = -1``: the mirrored sum
    over paths from i up to j with negative decreasing slopes and weight
    p^{(2α(v) + 2k)/n}.  Arc-local names: z_a is ``z{a - i + 1}``.
    """
    if j <= i or k < 1:
        raise ValueError("need j > i and k >= 1")
    F = Field(n)
    q = F.q
    z = {a: var(_arc_name(a, i), n) for a in range(i, j)}
    paths = _paths_down(j, i, k) if side > 0 else _paths_up(i, j, k)
    total = F.zero
    for c, ks in paths:
        v = [(c[s - 1] - c[s], ks[s - 1]) for s in range(1, len(c))]
        expo = 2 * alpha(v) + 2 * k - (2 * (k - 1) * (j - i) if side > 0 else 0)
        term = F.p_frac(expo) * (-(q**2) * F.qbar_frac(2)) ** (i - j)
        for s in range(1, len(c)):
            lo, hi = min(c[s - 1], c[s]), max(c[s - 1], c[s])
            for a in range(lo, hi):
                e = _block_exponent(a, lo, hi - lo, ks[s - 1])
                if e:
                    term = term * (z[a] * F.qbar_frac(2 * a)) ** e
        for s in range(1, len(c) - 1):
            term = term * (1 - z[c[s]] / (z[c[s] - 1] * q**2))
        total = total + term
    return total


def kernel_X_rhs(n: int, i: int, j: int, k: int) -> RatFun:
    """(z_i qbar^{2i/n})^k (-z_{j-1}) / (z_i (-q^2)^{j-i-1})."""
    F = Field(n)
    zi, zl = var(_arc_name(i, i), n), var(_arc_name(j - 1, i), n)
    return (zi * F.qbar_frac(2 * i)) ** k * (-zl) / (zi * (-(F.q**2)) ** (j - i - 1))


def of_check(n: int, i: int, j: int, k: int, side: int = 1) -> VerificationReport:
    rep = VerificationReport("toroidal", "kernel_identity", {"n": n, "i": i, "j": j, "k": k, "side": side})
    with timed(rep):
        lhs, rhs = kernel_X(n, i, j, k, side), kernel_X_rhs(n, i, j, k)
        if lhs != rhs:
            rep.fail("X(z_i..z_{j-1})", rhs, lhs)
    return rep


# ---------------------------------------------------------------------------
# combinatorial identities


def _floor_lhs(c: Sequence[int], ks: Sequence[int]) -> int:
    tot = 0
    for s in range(1, len(c)):
        d = c[s - 1] - c[s]
        for a in range(c[s], c[s - 1]):
            tot += a * _block_exponent(a, c[s], d, ks[s - 1])
    return tot


def _floor_middle(c: Sequence[int], ks: Sequence[int]) -> tuple[int, Fraction]:
    m1 = m2 = 0
    for s in range(1, len(c)):
        d, kk = c[s - 1] - c[s], ks[s - 1]
        m1 += c[s - 1] * kk - sum((i * kk) // d for i in range(1, d + 1))
        m2 += c[s - 1] * kk - Fraction(kk * d + kk - d + math.gcd(kk, d), 2)
    return m1, m2


def floor_identity_check(kmax: int = 6, lmax: int = 6, tops: Sequence[int] = (0, 1, 5)) -> VerificationReport:
    """Σ_s Σ_a a (⌊(a-c_s+1) k_s / d_s⌋ - ⌊(a-c_s) k_s / d_s⌋) = kj - k - α(v),
    with both intermediate forms, over every step sequence with positive
    d_s and k_s, Σ d_s <= lmax, Σ k_s <= kmax.  Here d_s = c_{s-1} - c_s."""
    rep = VerificationReport("toroidal", "floor_identity", {"kmax": kmax, "lmax": lmax})
    count = 0
    with timed(rep):
        for t in range(1, min(kmax, lmax) + 1):
            for ds in itertools.product(range(1, lmax + 1), repeat=t):
                if sum(ds) > lmax:
                    continue
                for ks in itertools.product(range(1, kmax + 1), repeat=t):
                    if sum(ks) > kmax:
                        continue
                    for top in tops:
                        c = [top]
                        for d in ds:
                            c.append(c[-1] - d)
                        K = sum(ks)
                        target = K * top - K - alpha(list(zip(ds, ks)))
                        vals = (_floor_lhs(c, ks),) + _floor_middle(c, ks)
                        count += 1
                        if any(v != target for v in vals):
                            rep.fail(f"c={c} k={list(ks)}", target, list(vals))
    rep.params["instances"] = count
    return rep


def _arc_exponent(n: int, arcs: Sequence[tuple[int, int, int]]) -> int:
    """The exponent d attached to a sequence of arcs [a;b) with levels k."""
    d = 0
    for a, b, k in arcs:
        e = b - a
        d += k * e - k - e + math.gcd(e, k) - 2 * (k - 1) * bar(b, n) - 2 * bar(a, n)
    for s, (_, _, k) in enumerate(arcs):
        for a2, b2, _ in arcs[s + 1:]:
            d -= 2 * n * k * ((a2 - 1) // n - (b2 - 1) // n)
    return d


def _l1_vectors(t: int, radius: int) -> Iterable[tuple[int, ...]]:
    if t == 0:
        yield ()
        return
    for d in range(-radius, radius + 1):
        for rest in _l1_vectors(t - 1, radius - abs(d)):
            yield (d,) + rest


def _compositions_upto(kmax: int) -> Iterable[tuple[int, ...]]:
    for K in range(1, kmax + 1):
        for cuts in itertools.product((0, 1), repeat=K - 1):
            parts, run = [], 1
            for c in cuts:
                if c:
                    parts.append(run)
                    run = 1
                else:
                    run += 1
            parts.append(run)
            yield tuple(parts)


def arc_identity_check(n: int, max_arcs: int = 3, max_len: int = 3, max_k: int = 2,
                       total_k: int | None = None, total_len: int | None = None) -> VerificationReport:
    """d = 2(α(v) - (k-1) ī - j̄) for arcs stringing together to [j;i).

    The arcs are the plus-side steps in reverse order: a path i = c_0, ..., c_t = j
    gives arcs [c_t; c_{t-1}), ..., [c_1; c_0) and v = [(c_{s-1} - c_s, k_s)].
    By default step lengths d_s range over |d_s| <= max_len (zero included)
    with at most ``max_arcs`` arcs of level <= max_k.  With ``total_k`` and
    ``total_len`` set, every composition of k <= total_k is used instead, with
    Σ|d_s| <= total_len.
    """
    exhaustive = total_k is not None
    params = {"n": n}
    if exhaustive:
        params.update(total_k=total_k, total_len=total_len if total_len is not None else total_k)
    else:
        params.update(max_arcs=max_arcs, max_len=max_len, max_k=max_k)
    rep = VerificationReport("toroidal", "arc_exponent", params)

    def shapes():
        if exhaustive:
            radius = params["total_len"]
            for ks in _compositions_upto(total_k):
                for ds in _l1_vectors(len(ks), radius):
                    yield ds, ks
        else:
            for t in range(1, max_arcs + 1):
                for ds in itertools.product(range(-max_len, max_len + 1), repeat=t):
                    for ks in itertools.product(range(1, max_k + 1), repeat=t):
                        yield ds, ks

    count = 0
    with timed(rep):
        for ds, ks in shapes():
            v = list(zip(ds, ks))
            K = sum(ks)
            for i in range(1, n + 1):
                c = [i]
                for d in ds:
                    c.append(c[-1] - d)
                j = c[-1]
                arcs = [(c[s], c[s - 1], ks[s - 1]) for s in range(len(c) - 1, 0, -1)]
                lhs = _arc_exponent(n, arcs)
                rhs = 2 * (alpha(v) - (K - 1) * bar(i, n) - bar(j, n))
                count += 1
                if lhs != rhs:
                    rep.fail(f"arcs={arcs}", rhs, lhs)
    rep.params["instances"] = count
    return rep


# ---------------------------------------------------------------------------
# symmetrization and the ζ-twisted product


def _color_perms(n: int, d: Sequence[int]) -> Iterable[dict[str, str]]:
    per = [list(itertools.permutations(range(1, di + 1))) for di in d]
    for choice in itertools.product(*per):
        ren = {}
        for c, perm in enumerate(choice):
            for a, b in enumerate(perm, start=1):
                if a != b:
                    ren[color_var(c + 1, a)] = color_var(c + 1, b)
        yield ren


def sym(n: int, d: Sequence[int], f: RatFun) -> RatFun:
    """Σ over S(d_1) x ... x S(d_n) of f with same-color variables permuted."""
    total = RatFun(0, n=n)
    for ren in _color_perms(n, d):
        total = total + f.rename(ren)
    return total


def _arc_kernel_to_color(n: int, i: int, j: int, kernel: RatFun, sign: int) -> ColorSymFun:
    d = _degree(n, i, j)
    f = sym(n, d, kernel.subs(_relabel_subs(n, i, j)))
    return ColorSymFun(n, d, f, sign)


def _zeta_arc(n: int, i: int, j: int, zeta: ZetaConfig, upward: bool) -> RatFun:
    """Π_{i<=a<b<j} ζ(z_b/z_a) (upward) or ζ(z_a/z_b)."""
    out = RatFun(1, n=n)
    for a in range(i, j):
        for b in range(a + 1, j):
            za, zb = var(_arc_name(a, i), n), var(_arc_name(b, i), n)
            if upward:
                out = out * zeta(b, a, zb / za)
            else:
                out = out * zeta(a, b, za / zb)
    return out


def _zero(n: int, sign: int) -> ColorSymFun:
    return ColorSymFun(n, (0,) * n, RatFun(0, n=n), sign)


def _unit(n: int, sign: int) -> ColorSymFun:
    return ColorSymFun(n, (0,) * n, RatFun(1, n=n), sign)


def make_Abar(n: int, i: int, j: int, k: int, sign: int, zeta: ZetaConfig) -> ColorSymFun:
    """Ā^{(±k)}_{±[i;j)} with μ = (j - i)/k."""
    if j <= i:
        raise ValueError("need i < j")
    if k == 0 or (j - i) % k:
        return _zero(n, sign)
    F = Field(n)
    q = F.q
    mu = Fraction(j - i, k)
    num = RatFun(1, n=n)
    for a in range(i, j):
        e = math.floor((a - i + 1) / mu) - math.floor((a - i) / mu)
        if e:
            num = num * (var(_arc_name(a, i), n) * F.qbar_frac(2 * a)) ** e
    den = (-(q**2) * F.qbar_frac(2)) ** (j - i)
    for a in range(i, j - 1):
        den = den * (1 - var(_arc_name(a + 1, i), n) / (var(_arc_name(a, i), n) * q**2))
    return _arc_kernel_to_color(n, i, j, num / den * _zeta_arc(n, i, j, zeta, True), sign)


def make_Bbar(n: int, i: int, j: int, k: int, sign: int, zeta: ZetaConfig) -> ColorSymFun:
    """B̄^{(±k)}_{±[i;j)} with μ = (j - i)/k."""
    if j <= i:
        raise ValueError("need i < j")
    if k == 0 or (j - i) % k:
        return _zero(n, sign)
    F = Field(n)
    mu = Fraction(j - i, k)
    num = RatFun(1, n=n)
    for a in range(i, j):
        e = math.ceil((a - i + 1) / mu) - math.ceil((a - i) / mu)
        if e:
            num = num * (var(_arc_name(a, i), n) * F.qbar_frac(2 * a)) ** e
    den = (-F.qbar_frac(2)) ** (i - j)
    for a in range(i, j - 1):
        den = den * (1 - var(_arc_name(a, i), n) / var(_arc_name(a + 1, i), n))
    return _arc_kernel_to_color(n, i, j, num / den * _zeta_arc(n, i, j, zeta, False), sign)


def make_Anew(n: int, i: int, j: int, k: int, sign: int, zeta: ZetaConfig) -> ColorSymFun:
    """A_{±[i;j),k}, with A_{±[i;i),k} = δ_k^0 and A_{±[i;j),0} = 0."""
    if j == i:
        return _unit(n, sign) if k == 0 else _zero(n, sign)
    if j < i:
        raise ValueError("need i <= j")
    if k == 0:
        return _zero(n, sign)
    F = Field(n)
    q = F.q
    num = -(var(_arc_name(i, i), n) * F.qbar_frac(2 * i)) ** k
    den = RatFun(1, n=n)
    for a in range(i, j - 1):
        den = den * (1 - var(_arc_name(a, i), n) * q**2 / var(_arc_name(a + 1, i), n))
    return _arc_kernel_to_color(n, i, j, num / den * _zeta_arc(n, i, j, zeta, True), sign)


def shuffle_product_S(X: ColorSymFun, Y: ColorSymFun, zeta: ZetaConfig) -> ColorSymFun:
    """Sym[X/d! * Y(shifted)/d'! * Π ζ(z_{ia}/z_{i'a'})] with a in X and a' in Y."""
    n = X.n
    if Y.n != n:
        raise ValueError("mismatched n")
    d, dp = X.d, Y.d
    tot = tuple(a + b for a, b in zip(d, dp))
    if max(tot, default=0) > PER_COLOR:
        raise ValueError("too many variables of one color")
    shift = {}
    for c in range(n):
        for a in range(dp[c], 0, -1):
            shift[color_var(c + 1, a)] = color_var(c + 1, a + d[c])
    Yf = Y.f.rename(shift)
    cross = RatFun(1, n=n)
    for c in range(n):
        for a in range(1, d[c] + 1):
            for cp in range(n):
                for ap in range(d[cp] + 1, d[cp] + dp[cp] + 1):
                    cross = cross * zeta(c + 1, cp + 1, var(color_var(c + 1, a), n) / var(color_var(cp + 1, ap), n))
    norm = math.prod(math.factorial(v) for v in d) * math.prod(math.factorial(v) for v in dp)
    f = sym(n, tot, X.f * Yf * cross) / norm
    return ColorSymFun(n, tot, f, X.sign)


# ---------------------------------------------------------------------------
# wheel conditions


def _linear_locus(n: int, factor: RatFun, d: Sequence[int]):
    """Match an irreducible factor against z_{c,a} q^2 - z_{c+1,b} (with the
    wraparound z_{n+1,b} = z_{1,b} qbar^{-2}); returns (c, a, b) or None."""
    F = Field(n)
    q = F.q
    for c in range(1, n + 1):
        cn = c % n + 1
        wrap = F.qbar_frac(-2 * n) if c == n else F.one
        for a in range(1, d[c - 1] + 1):
            for b in range(1, d[cn - 1] + 1):
                if cn == c and a == b:
                    continue
                lin = var(color_var(c, a), n) * q**2 - var(color_var(cn, b), n) * wrap
                ratio = factor / lin
                if ratio.is_constant():
                    return c, a, b
    return None


def wheel_check(X: ColorSymFun) -> VerificationReport:
    """At most simple poles at z_{ia} q^2 - z_{i+1,b} (beyond monomials and
    scalars), each residue vanishing at z_{ia'} = z_{i+1,b} and z_{ia} = z_{i+1,b'}."""
    n = X.n
    rep = VerificationReport("toroidal", "wheel", {"n": n, "d": list(X.d)})
    F = Field(n)
    q = F.q
    names = set(X.variables())
    with timed(rep):
        if X.is_zero():
            return rep
        _, factors = X.f.den.factor()
        for poly, mult in factors:
            fac = RatFun(poly, n=n)
            if not (fac.variables() & names):
                continue
            if len(poly) == 1:
                continue
            hit = _linear_locus(n, fac, X.d)
            if hit is None:
                rep.fail("pole", "z_{ia} q^2 - z_{i+1,b}", fac)
                continue
            if mult > 1:
                rep.fail(f"pole order at {fac}", 1, mult)
                continue
            c, a, b = hit
            cn = c % n + 1
            wrap = F.qbar_frac(-2 * n) if c == n else F.one
            za = var(color_var(c, a), n)
            # z_{c+1,b} * wrap = z_{c,a} q^2
            target = color_var(cn, b)
            val = za * q**2 / wrap
            res = (X.f * fac).subs({target: val})
            for ap in range(1, X.d[c - 1] + 1):
                if ap == a or (cn == c and ap == b):
                    continue
                chk = _vanishes(res, color_var(c, ap), val * wrap)
                if not chk:
                    rep.fail(f"residue at {fac}", f"divisible by z_{c},{ap} - z_{cn},{b}", res)
            for bp in range(1, X.d[cn - 1] + 1):
                if bp == b or (cn == c and bp == a):
                    continue
                chk = _vanishes(res, color_var(cn, bp), za / wrap)
                if not chk:
                    rep.fail(f"residue at {fac}", f"divisible by z_{c},{a} - z_{cn},{bp}", res)
    return rep


def _vanishes(F: RatFun, name: str, value: RatFun) -> bool:
    num = RatFun(F.num, n=F.n)
    return num.subs({name: value}).is_zero()


# ---------------------------------------------------------------------------
# the full symmetrized form (ζ-dependent, optional)


def eq_plus_check(n: int, i: int, j: int, k: int, zeta: ZetaConfig) -> VerificationReport:
    """Σ_paths p^{(2α(v) - 2(k-1)(j-i) + 2k)/n} Ā_{[c_1;c_0)} * ... * Ā_{[c_t;c_{t-1})} = A_{[i;j),k}.

    Convention-relative: the result depends on the configured ζ.
    """
    rep = VerificationReport(
        "toroidal", "eq_plus_symmetrized", {"n": n, "i": i, "j": j, "k": k, "zeta": zeta.fingerprint()}
    )
    F = Field(n)
    with timed(rep):
        total = None
        for c, ks in _paths_down(j, i, k):
            v = [(c[s - 1] - c[s], ks[s - 1]) for s in range(1, len(c))]
            prod = None
            for s in range(1, len(c)):
                piece = make_Abar(n, c[s], c[s - 1], ks[s - 1], 1, zeta)
                prod = piece if prod is None else shuffle_product_S(prod, piece, zeta)
            coeff = F.p_frac(2 * alpha(v) - 2 * (k - 1) * (j - i) + 2 * k)
            term = ColorSymFun(n, prod.d, prod.f * coeff)
            total = term if total is None else ColorSymFun(n, term.d, total.f + term.f)
        rhs = make_Anew(n, i, j, k, 1, zeta)
        if total.d != rhs.d or total.f != rhs.f:
            rep.fail("symmetrized sum", rhs.f, total.f)
    return rep
