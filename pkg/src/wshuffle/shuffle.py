"""The shuffle algebras A+ and A-: product, symmetrization, F-generators.

Elements are End(V^{(x)k})-valued rational functions in ``z1..zk``.  Integer
classes (i, j) in Z^2/(n,n)Z are handled through extended matrix units
``E_ij = E_{ibar jbar} z^(floor((i-1)/n) - floor((j-1)/n))``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .ratfun import Field, RatFun, monomial, var
from .rmatrix import (
    make_f,
    make_Qbar_minus,
    make_Qbar_plus,
    make_R,
    make_Rtilde_minus,
    make_Rtilde_plus,
)
from .tensor import TensorRat

__all__ = [
    "ShuffleElem",
    "FWordTerm",
    "ShuffleError",
    "bar",
    "floor_block",
    "arc",
    "extended_unit",
    "shuffle_product",
    "shuffle_word",
    "symmetrize",
    "braid_lift",
    "braid_lift_inverse",
    "perm_word",
    "all_reduced_words",
    "apply_sigma",
    "R_omega",
    "conj_perm",
    "is_symmetric",
    "t_sequence",
    "make_F_plus",
    "make_F_minus",
    "make_F",
    "degree_slope",
    "xk_functional",
    "xk_single",
]


class ShuffleError(ValueError):
    pass


def bar(i: int, n: int) -> int:
    """Representative of i mod n in {1..n}."""
    return (i - 1) % n + 1


def floor_block(i: int, n: int) -> int:
    return (i - 1) // n


def arc(i: int, j: int, n: int) -> tuple[int, ...]:
    """[i; j) = 1^i + ... + 1^(j-1) in Z^n, with [i; j) = -[j; i) for j < i."""
    v = [0] * n
    if j >= i:
        for a in range(i, j):
            v[bar(a, n) - 1] += 1
    else:
        for a in range(j, i):
            v[bar(a, n) - 1] -= 1
    return tuple(v)


def zname(a: int) -> str:
    return f"z{a}"


def extended_unit(n: int, i: int, j: int, varname: str, coeff: RatFun | None = None) -> TensorRat:
    """E_ij in the extended-index convention, on a single factor."""
    e = floor_block(i, n) - floor_block(j, n)
    c = monomial({varname: e}, n=n)
    if coeff is not None:
        c = c * coeff
    return TensorRat.elementary(n, bar(i, n) - 1, bar(j, n) - 1, c)


# --------------------------------------------------------------------------
# elements


@dataclass
class ShuffleElem:
    """Homogeneous-or-not element of A+ (sign=+1) or A- (sign=-1)."""

    sign: int
    k: int
    n: int
    value: TensorRat | None  # None encodes the unit when k == 0
    label: str = ""

    @classmethod
    def unit(cls, sign: int, n: int) -> "ShuffleElem":
        return cls(sign, 0, n, None, "1")

    def is_unit(self) -> bool:
        return self.k == 0

    def scale(self, c) -> "ShuffleElem":
        if self.k == 0:
            raise ShuffleError("scaling the bare unit is not represented; use a ScalarUnit")
        return ShuffleElem(self.sign, self.k, self.n, self.value.scale(RatFun.coerce(c)), self.label)

    def __add__(self, other: "ShuffleElem") -> "ShuffleElem":
        if (self.sign, self.k, self.n) != (other.sign, other.k, other.n):
            raise ShuffleError("adding elements of different shapes")
        return ShuffleElem(self.sign, self.k, self.n, self.value + other.value)

    def __mul__(self, other: "ShuffleElem") -> "ShuffleElem":
        return shuffle_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, ShuffleElem):
            return NotImplemented
        if (self.sign, self.k, self.n) != (other.sign, other.k, other.n):
            return False
        if self.k == 0:
            return True
        return self.value == other.value

    __hash__ = None


# --------------------------------------------------------------------------
# permutations and braid lifts


def conj_perm(X: TensorRat, sigma: Sequence[int]) -> TensorRat:
    """X_{sigma(1)..sigma(k)}(z_{sigma(1)}, ..., z_{sigma(k)}) (0-based sigma)."""
    ren = {zname(i + 1): zname(sigma[i] + 1) for i in range(len(sigma)) if sigma[i] != i}
    return X.permute(sigma).rename(ren)


def _simple(k: int, a: int) -> tuple[int, ...]:
    s = list(range(k))
    s[a], s[a + 1] = s[a + 1], s[a]
    return tuple(s)


def _compose_word(k: int, word: Sequence[int]) -> tuple[int, ...]:
    s = tuple(range(k))
    for a in word:
        t = _simple(k, a)
        s = tuple(s[t[i]] for i in range(k))
    return s


def _R_adjacent(n: int, k: int, a: int) -> TensorRat:
    za, zb = var(zname(a + 1), n), var(zname(a + 2), n)
    return make_R(n, za / zb).embed((a, a + 1), k)


def _R_adjacent_inverse(n: int, k: int, a: int) -> TensorRat:
    za, zb = var(zname(a + 1), n), var(zname(a + 2), n)
    # R_12(z)^-1 = R_21(1/z) / f(z)
    inv = make_R(n, zb / za).permute((1, 0)).scale(1 / make_f(za / zb, n))
    return inv.embed((a, a + 1), k)


def braid_lift(n: int, k: int, word: Sequence[int]) -> TensorRat:
    """R_sigma for sigma = s_{word[0]} s_{word[1]} ... (0-based reflections).

    Uses R_{s_a o tau} = R_{a,a+1}(z_a/z_{a+1}) * conj_{s_a}(R_tau).
    """
    R = TensorRat.identity(k, n)
    for a in reversed(word):
        R = _R_adjacent(n, k, a) @ conj_perm(R, _simple(k, a))
    return R


def braid_lift_inverse(n: int, k: int, word: Sequence[int]) -> TensorRat:
    Rinv = TensorRat.identity(k, n)
    for a in reversed(word):
        Rinv = conj_perm(Rinv, _simple(k, a)) @ _R_adjacent_inverse(n, k, a)
    return Rinv


def perm_word(sigma: Sequence[int]) -> list[int]:
    """Reduced word w with sigma = s_{w[0]} o s_{w[1]} o ... ."""
    k = len(sigma)
    cur = list(sigma)
    out = []
    # left-multiplying by s_a swaps the values a, a+1 in one-line notation
    while True:
        pos = {v: i for i, v in enumerate(cur)}
        for a in range(k - 1):
            if pos[a] > pos[a + 1]:
                break
        else:
            break
        cur = [a + 1 if v == a else a if v == a + 1 else v for v in cur]
        out.append(a)
    return out


def all_reduced_words(sigma: Sequence[int]) -> list[list[int]]:
    k = len(sigma)
    target = tuple(sigma)
    length = sum(1 for i in range(k) for j in range(i + 1, k) if sigma[i] > sigma[j])
    words = []

    def rec(prefix, cur):
        if len(prefix) == length:
            if cur == target:
                words.append(list(prefix))
            return
        for a in range(k - 1):
            t = _simple(k, a)
            nxt = tuple(cur[t[i]] for i in range(k))
            inv = sum(1 for i in range(k) for j in range(i + 1, k) if nxt[i] > nxt[j])
            if inv == len(prefix) + 1:
                rec(prefix + [a], nxt)

    rec([], tuple(range(k)))
    return words


@lru_cache(maxsize=None)
def _lift_cache(n: int, k: int, sigma: tuple[int, ...]):
    w = perm_word(sigma)
    return braid_lift(n, k, w), braid_lift_inverse(n, k, w)


def apply_sigma(X: TensorRat, sigma: Sequence[int]) -> TensorRat:
    R, Rinv = _lift_cache(X.n, X.k, tuple(sigma))
    return R @ conj_perm(X, sigma) @ Rinv


def symmetrize(X: TensorRat) -> TensorRat:
    """Sum over S(k) of R_sigma X_sigma(z_sigma) R_sigma^-1."""
    acc = None
    for sigma in itertools.permutations(range(X.k)):
        term = apply_sigma(X, sigma)
        acc = term if acc is None else acc + term
    return acc


def is_symmetric(X: TensorRat) -> tuple[bool, tuple | None]:
    """Check the symmetry identity for every sigma; return a failing sigma."""
    for sigma in itertools.permutations(range(X.k)):
        if not apply_sigma(X, sigma) == X:
            return False, sigma
    return True, None


def R_omega(n: int, k: int) -> TensorRat:
    """prod_{i<j} R_ij(z_i/z_j) in the order (1,2), (1,3), ..., (k-1,k)."""
    out = TensorRat.identity(k, n)
    for i in range(k):
        for j in range(i + 1, k):
            zi, zj = var(zname(i + 1), n), var(zname(j + 1), n)
            out = out @ make_R(n, zi / zj).embed((i, j), k)
    return out


# --------------------------------------------------------------------------
# shuffle product


def _relabel(X: TensorRat, positions: Sequence[int], N: int) -> TensorRat:
    """X_{a_1..a_k}(z_{a_1}, ..., z_{a_k}) inside End(V^{(x)N})."""
    ren = {zname(i + 1): zname(a + 1) for i, a in enumerate(positions) if a != i}
    return X.rename(ren).embed(positions, N)


def _Rpair(n, N, a, b, kind):
    za, zb = var(zname(a + 1), n), var(zname(b + 1), n)
    if kind == "R":
        M = make_R(n, za / zb)
    elif kind == "+":
        M = make_Rtilde_plus(n, za / zb)
    else:
        M = make_Rtilde_minus(n, za / zb)
    return M.embed((a, b), N)


def shuffle_product(X: ShuffleElem, Y: ShuffleElem) -> ShuffleElem:
    if X.sign != Y.sign:
        raise ShuffleError("shuffle product of elements from A+ and A-")
    if X.n != Y.n:
        raise ShuffleError("shuffle product of elements with different n")
    if X.is_unit():
        return Y
    if Y.is_unit():
        return X
    n, k, l = X.n, X.k, Y.k
    N = k + l
    kind = "+" if X.sign > 0 else "-"
    acc = None
    for A in itertools.combinations(range(N), k):
        B = [b for b in range(N) if b not in A]
        left = TensorRat.identity(N, n)
        for i in range(k - 1, -1, -1):
            for j in range(l):
                if A[i] < B[j]:
                    left = left @ _Rpair(n, N, A[i], B[j], "R")
        mid = TensorRat.identity(N, n)
        for i in range(k):
            for j in range(l - 1, -1, -1):
                mid = mid @ _Rpair(n, N, A[i], B[j], kind)
        right = TensorRat.identity(N, n)
        for i in range(k - 1, -1, -1):
            for j in range(l):
                if A[i] > B[j]:
                    right = right @ _Rpair(n, N, A[i], B[j], "R")
        term = left @ _relabel(X.value, A, N) @ mid @ _relabel(Y.value, B, N) @ right
        acc = term if acc is None else acc + term
    label = f"{X.label}*{Y.label}" if X.label and Y.label else ""
    return ShuffleElem(X.sign, N, n, acc, label)


def shuffle_word(elems: Sequence[ShuffleElem]) -> ShuffleElem:
    out = elems[0]
    for e in elems[1:]:
        out = shuffle_product(out, e)
    return out


# --------------------------------------------------------------------------
# F generators


def t_sequence(i: int, j: int, k: int) -> list[int]:
    """t_0 = i and t_a = i + ceil((j - i) a / k)."""
    return [i] + [i + -((-(j - i) * a) // k) for a in range(1, k + 1)]


def _F_core(n: int, i: int, j: int, k: int, sign: int) -> TensorRat:
    F = Field(n)
    t = t_sequence(i, j, k)
    Rt = make_Rtilde_plus if sign > 0 else make_Rtilde_minus
    Qb = make_Qbar_plus if sign > 0 else make_Qbar_minus
    prod = R_omega(n, k)
    for a in range(1, k + 1):
        za = var(zname(a), n)
        for b in range(1, a - 1):
            prod = prod @ Rt(n, var(zname(b), n) / za).embed((b - 1, a - 1), k)
        if a >= 2:
            prod = prod @ Qb(n, var(zname(a - 1), n) / za).embed((a - 2, a - 1), k)
        if sign > 0:
            c = F.qbar_frac(2 * bar(t[a], n))
        else:
            c = F.qbar_frac(-2 * bar(t[a - 1], n))
        prod = prod @ extended_unit(n, t[a - 1], t[a], zname(a), c).embed((a - 1,), k)
    out = symmetrize(prod)
    if sign < 0:
        out = out.scale(F.qpow(-2 * k))
    return out


@lru_cache(maxsize=None)
def _F_cached(n: int, i: int, j: int, k: int, sign: int) -> TensorRat:
    # classes are normalized so that i lies in {1..n}
    s = floor_block(i, n) * n
    base = _F_core(n, i - s, j - s, k, sign)
    return base


def make_F(n: int, i: int, j: int, k: int, sign: int) -> ShuffleElem:
    if k < 1:
        raise ShuffleError("F generators need k >= 1")
    val = _F_cached(n, i, j, k, sign)
    tag = f"F({'' if sign > 0 else '-'}{k};{i},{j})"
    return ShuffleElem(sign, k, n, val, tag)


def make_F_plus(n: int, i: int, j: int, k: int) -> ShuffleElem:
    return make_F(n, i, j, k, +1)


def make_F_minus(n: int, i: int, j: int, k: int) -> ShuffleElem:
    return make_F(n, i, j, k, -1)


# --------------------------------------------------------------------------
# degrees


def degree_slope(X: ShuffleElem) -> tuple[tuple[int, ...], int, Fraction]:
    """(hdeg, vdeg, slope); raises on a non-homogeneous element."""
    n, k = X.n, X.k
    vdeg = X.sign * k
    if k == 0:
        return (0,) * n, 0, Fraction(0)
    zidx = [zname(a + 1) for a in range(k)]
    found = None
    for (r, c), v in X.value.items():
        hom = _hom_degree(v, zidx)
        if hom is None:
            raise ShuffleError("entry is not homogeneous in the spectral variables")
        d = [hom] * n
        for ra, ca in zip(r, c):
            a = arc(ra + 1, ca + 1, n)
            d = [x - y for x, y in zip(d, a)]
        d = tuple(d)
        if found is None:
            found = d
        elif found != d:
            raise ShuffleError(f"mixed degrees {found} and {d}")
    if found is None:
        raise ShuffleError("zero element has no degree")
    return found, vdeg, Fraction(sum(found), vdeg)


def _hom_degree(v: RatFun, names) -> int | None:
    from .ratfun import INDEX

    idx = [INDEX[s] for s in names]

    def degs(p):
        out = set()
        for e in p.monoms():
            out.add(int(sum(e[i] for i in idx)))
        return out

    dn, dd = degs(v.num), degs(v.den)
    if len(dn) != 1 or len(dd) != 1:
        return None
    return next(iter(dn)) - next(iter(dd))


# --------------------------------------------------------------------------
# F-words and the X^(k) functional


@dataclass(frozen=True)
class FWordTerm:
    """coefficient * F^{(s k_1)}_{c_0 c_1} ... F^{(s k_t)}_{c_{t-1} c_t}."""

    path: tuple[int, ...]
    composition: tuple[int, ...]
    coefficient: RatFun
    sign: int = 1

    def __post_init__(self):
        if len(self.path) != len(self.composition) + 1:
            raise ShuffleError("path must have one more entry than the composition")
        if any(k < 1 for k in self.composition):
            raise ShuffleError("composition parts must be positive")

    @property
    def k(self) -> int:
        return sum(self.composition)

    @property
    def steps(self) -> list[tuple[int, int, int]]:
        return [(self.path[s], self.path[s + 1], self.composition[s]) for s in range(len(self.composition))]

    def slopes(self) -> list[Fraction]:
        return [Fraction(a - b, k) for a, b, k in self.steps]

    def horizontal_total(self) -> int:
        return self.path[0] - self.path[-1]

    def realize(self, n: int) -> ShuffleElem:
        factors = [make_F(n, a, b, k, self.sign) for a, b, k in self.steps]
        return shuffle_word(factors).scale(self.coefficient)


def xk_single(n: int, i: int, j: int, k: int, yname: str = "y") -> TensorRat:
    """(F^{(-k)}_{ij})^{(k)}(y) from the closed form (written with j' = i, i' = j)."""
    F = Field(n)
    jp, ip = i, j
    d = jp - ip
    expo = -k * d - k + d + math.gcd(ip - jp, k) - 2 * (k - 1) * bar(ip, n) - 2 * bar(jp, n)
    scal = F.qpow(-2 * k) * (1 - F.qpow(-2)) ** (1 - k) * F.p_frac(expo)
    return extended_unit(n, jp, ip, yname, scal)


def xk_functional(n: int, word: Sequence[tuple[int, int, int]], yname: str = "y") -> TensorRat:
    """X^{(K)}(y) for a product of F^{(-k_s)}_{i_s j_s}, using multiplicativity."""
    F = Field(n)
    out = TensorRat.identity(1, n)
    shift = 0
    y = var(yname, n)
    for i, j, k in word:
        piece = xk_single(n, i, j, k, yname)
        if shift:
            piece = piece.subs({yname: y * F.p_pow(-2 * shift)})
        out = out @ piece
        shift += k
    return out
