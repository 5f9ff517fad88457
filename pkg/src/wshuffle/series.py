"""Laurent expansions of rational functions and truncated series windows."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .ratfun import CTX, INDEX, RatFun, ZERO, _ONE, _ZERO, monomial, var

__all__ = [
    "Regime",
    "SeriesWindow",
    "laurent_coeffs",
    "expand_regime",
    "split_by_var",
]


def split_by_var(p, idx: int) -> dict[int, object]:
    """Group the terms of polynomial ``p`` by the exponent of variable ``idx``."""
    groups: dict[int, dict] = {}
    for e, c in p.to_dict().items():
        k = e[idx]
        e2 = e[:idx] + (0,) + e[idx + 1 :]
        groups.setdefault(k, {})[e2] = c
    return {k: CTX.from_dict(d) for k, d in groups.items()}


class _InverseSeries:
    """Power series of 1/D0 with D0(0) != 0, kept as P_m / d0**(m+1)."""

    def __init__(self, dcoeffs: dict[int, object]):
        self.d = dcoeffs
        self.d0 = dcoeffs[0]
        self.P = [_ONE]

    def numerators(self, m: int):
        d, d0, P = self.d, self.d0, self.P
        while len(P) <= m:
            k = len(P)
            acc = _ZERO
            d0pow = _ONE
            for i in range(1, k + 1):
                di = d.get(i)
                if di is not None:
                    acc = acc + di * P[k - i] * d0pow
                d0pow = d0pow * d0
            P.append(-acc)
        return P


def laurent_coeffs(F: RatFun, name: str, lo: int, hi: int, at_infinity: bool = False) -> dict[int, RatFun]:
    """Coefficients of ``name**m`` (lo <= m <= hi) in the Laurent expansion of
    ``F`` around ``name = 0`` (or ``name = oo``), other variables generic."""
    if at_infinity:
        w = var(name)
        G = F.subs({name: w.inverse()})
        raw = laurent_coeffs(G, name, -hi, -lo)
        return {-m: c for m, c in raw.items()}
    idx = INDEX[name]
    if F.is_zero():
        return {}
    Nc = split_by_var(F.num, idx)
    Dc = split_by_var(F.den, idx)
    v = min(Dc)
    dshift = {k - v: c for k, c in Dc.items()}
    inv = _InverseSeries(dshift)
    d0 = dshift[0]
    imin = min(Nc)
    # F = name**(-v) * N * (1/D0); coefficient of name**m uses s_{m+v-i}
    top = hi + v - imin
    if top < 0:
        return {}
    P = inv.numerators(top)
    out: dict[int, RatFun] = {}
    for m in range(lo, hi + 1):
        M = m + v - imin
        if M < 0:
            continue
        acc = _ZERO
        d0pow = _ONE
        # s_{m+v-i} = P[m+v-i] / d0**(m+v-i+1); common denominator d0**(M+1)
        for i in range(imin, m + v + 1):
            ni = Nc.get(i)
            if ni is not None:
                acc = acc + ni * P[m + v - i] * d0pow
            d0pow = d0pow * d0
        if not acc.is_zero():
            out[m] = RatFun(acc, d0 ** (M + 1), F.n)
    return out


@dataclass(frozen=True)
class Regime:
    """|small| << |large|: the expansion variable is ``u = small/large`` at 0.

    ``Regime('y', 'x')`` encodes |x| >> |y|.
    """

    small: str
    large: str

    def flipped(self) -> "Regime":
        return Regime(self.large, self.small)

    def __str__(self):
        return f"|{self.small}| << |{self.large}|"


@dataclass
class SeriesWindow:
    """Truncated Laurent series in one expansion variable.

    ``coeffs[m]`` is the coefficient of ``var**m``; exponents are confined to
    ``[-bound, bound]``.  The regime records which expansion produced it.
    """

    var: str
    regime: object
    bound: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        for m in self.coeffs:
            if abs(m) > self.bound:
                raise ValueError(f"exponent {m} outside window +-{self.bound}")

    def __getitem__(self, m):
        return self.coeffs.get(m, ZERO)

    def map(self, fn: Callable) -> "SeriesWindow":
        out = {}
        for m, c in self.coeffs.items():
            r = fn(c)
            if not _is_zero(r):
                out[m] = r
        return SeriesWindow(self.var, self.regime, self.bound, out)

    def __sub__(self, other: "SeriesWindow") -> "SeriesWindow":
        keys = set(self.coeffs) | set(other.coeffs)
        out = {}
        for m in keys:
            a, b = self.coeffs.get(m), other.coeffs.get(m)
            if a is None:
                r = -b
            elif b is None:
                r = a
            else:
                r = a - b
            if not _is_zero(r):
                out[m] = r
        return SeriesWindow(self.var, None, min(self.bound, other.bound), out)

    def __mul__(self, other: "SeriesWindow") -> "SeriesWindow":
        bound = min(self.bound, other.bound)
        out: dict = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                if abs(a + b) <= bound:
                    out.setdefault(a + b, []).append(ca * cb)
        res = {}
        for m, lst in out.items():
            s = lst[0]
            for x in lst[1:]:
                s = s + x
            if not _is_zero(s):
                res[m] = s
        return SeriesWindow(self.var, self.regime, bound, res)

    def equals(self, other: "SeriesWindow") -> bool:
        return not (self - other).coeffs

    def as_strings(self) -> dict[int, str]:
        return {m: str(c) for m, c in sorted(self.coeffs.items())}


def _is_zero(c) -> bool:
    if isinstance(c, RatFun):
        return c.is_zero()
    return c.is_zero()


def expand_regime(F: RatFun, regime: Regime, N: int, uvar: str = "u") -> SeriesWindow:
    """Expand ``F`` in the regime |small| << |large| and truncate to |m| <= N.

    The expansion variable is ``u = small/large``; coefficients are rational
    functions of the remaining variables (``large`` included).
    """
    u = var(uvar)
    G = F.subs({regime.small: u * var(regime.large)})
    coeffs = laurent_coeffs(G, uvar, -N, N)
    return SeriesWindow(uvar, regime, N, coeffs)


def delta_window(alpha: RatFun, N: int, uvar: str = "u", scale: RatFun | None = None) -> SeriesWindow:
    """``scale * delta(u/alpha) = scale * sum_m alpha**(-m) u**m`` on |m| <= N."""
    scale = scale if scale is not None else monomial({})
    return SeriesWindow(uvar, "delta", N, {m: scale * alpha ** (-m) for m in range(-N, N + 1)})
