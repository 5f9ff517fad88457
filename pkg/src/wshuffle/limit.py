"""Classical limit: q = e^ε, p = e^{εβ}, expansions to a fixed order in ε.

Inside this module ``h`` stands for ``p`` and ``b`` for ``β``.  A rational
function in ``q``, ``h`` and spectral variables becomes a truncated power
series in ε whose coefficients are rational in the spectral variables and
polynomial in ``b``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from .ratfun import CTX, INDEX, RatFun, var
from .report import VerificationReport, timed
from .rmatrix import make_R, swap12
from .tensor import TensorRat

__all__ = [
    "EpsSeries",
    "eps_expand",
    "eps_R",
    "Rbar",
    "Rbar21",
    "perm12",
    "check_limit_identities",
]

_Q, _H = INDEX["q"], INDEX["h"]


def _beta() -> RatFun:
    return var("b")


def _poly_series(p, order: int) -> list[RatFun]:
    """Each monomial q^a h^c m becomes m * exp((a + c β) ε), truncated."""
    out = [RatFun(0) for _ in range(order + 1)]
    beta = _beta()
    for exps, c in p.to_dict().items():
        a, ch = int(exps[_Q]), int(exps[_H])
        rest = [int(e) for e in exps]
        rest[_Q] = rest[_H] = 0
        base = RatFun(CTX.from_dict({tuple(rest): int(c)}))
        rate = beta * ch + a
        power = RatFun(1)
        for m in range(order + 1):
            out[m] = out[m] + base * power / math.factorial(m)
            power = power * rate
    return out


def _series_div(num: list[RatFun], den: list[RatFun]) -> list[RatFun]:
    if den[0].is_zero():
        raise ZeroDivisionError("denominator vanishes at ε = 0")
    inv0 = den[0].inverse()
    out: list[RatFun] = []
    for m in range(len(num)):
        acc = num[m]
        for j in range(1, m + 1):
            acc = acc - den[j] * out[m - j]
        out.append(acc * inv0)
    return out


def eps_expand(F: RatFun, order: int = 2) -> list[RatFun]:
    """Coefficients of ε^0..ε^order of ``F`` under q = e^ε, h = e^{εβ}."""
    return _series_div(_poly_series(F.num, order), _poly_series(F.den, order))


@dataclass(frozen=True)
class EpsSeries:
    """Truncated series Σ_{m <= order} ε^m C_m with TensorRat coefficients."""

    coeffs: tuple[TensorRat, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, T: TensorRat, order: int = 2) -> "EpsSeries":
        z = TensorRat.zero(T.k, T.n)
        return cls((T,) + (z,) * order)

    @classmethod
    def of_tensor(cls, T: TensorRat, order: int = 2) -> "EpsSeries":
        cols: list[dict] = [{} for _ in range(order + 1)]
        for key, v in T.items():
            for m, c in enumerate(eps_expand(v, order)):
                if not c.is_zero():
                    cols[m][key] = c
        return cls(tuple(TensorRat.from_ratfuns(T.k, T.n, c) for c in cols))

    def __getitem__(self, m: int) -> TensorRat:
        return self.coeffs[m]

    def __add__(self, other: "EpsSeries") -> "EpsSeries":
        return EpsSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return EpsSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "EpsSeries") -> "EpsSeries":
        return self + (-other)

    def __matmul__(self, other: "EpsSeries") -> "EpsSeries":
        N = min(self.order, other.order)
        out = []
        for m in range(N + 1):
            acc = TensorRat.zero(self[0].k, self[0].n)
            for j in range(m + 1):
                acc = acc + self[j] @ other[m - j]
            out.append(acc)
        return EpsSeries(tuple(out))

    def shift_down(self) -> "EpsSeries":
        """Divide by ε; the ε^0 coefficient must vanish."""
        if not self[0].is_zero():
            raise ValueError("ε^0 coefficient is nonzero")
        z = TensorRat.zero(self[0].k, self[0].n)
        return EpsSeries(self.coeffs[1:] + (z,))

    def truncated(self, order: int) -> "EpsSeries":
        return EpsSeries(self.coeffs[: order + 1])


def eps_R(n: int, arg, order: int = 2) -> EpsSeries:
    """ε-expansion of R(arg); ``arg`` may involve ``h`` (= p)."""
    return EpsSeries.of_tensor(make_R(n, arg).with_nf(None), order)


def perm12(n: int) -> TensorRat:
    """The flip (12) = Σ E_ij ⊗ E_ji."""
    return TensorRat.from_ratfuns(2, n, {((i, j), (j, i)): RatFun(1) for i in range(n) for j in range(n)})


def Rbar(n: int, arg) -> TensorRat:
    """Σ E_ij ⊗ E_ji (z^{[i<=j]} + z^{[i<j]}) / (1 - z)."""
    z = RatFun.coerce(arg)
    ents = {}
    for i in range(n):
        for j in range(n):
            num = (z if i <= j else RatFun(1)) + (z if i < j else RatFun(1))
            ents[((i, j), (j, i))] = num / (1 - z)
    return TensorRat.from_ratfuns(2, n, ents)


def Rbar21(n: int, arg) -> TensorRat:
    return swap12(Rbar(n, arg))


def _generic_matrix(n: int) -> TensorRat:
    """Λ̄ ⊗ 1 with independent commuting entries z1..z_{n^2} (enough for terms linear in Λ̄)."""
    ents = {}
    for i in range(n):
        for j in range(n):
            L = var(f"z{i * n + j + 1}")
            for c in range(n):
                ents[((i, c), (j, c))] = L
    return TensorRat.from_ratfuns(2, n, ents)


def _compare(rep: VerificationReport, label: str, lhs: TensorRat, rhs: TensorRat) -> None:
    diff = lhs - rhs
    if not diff.is_zero():
        key, v = next(iter(diff.items()))
        rep.fail(f"{label} entry {key}", rhs.entry(*key), lhs.entry(*key))


def check_limit_identities(n: int, order: int = 2) -> list[VerificationReport]:
    """The classical-limit facts used for the commutation of different Λ̄'s."""
    z, h, beta = var("z1"), var("h"), _beta()
    params = {"n": n, "order": order}
    reports = []
    one = TensorRat.identity(2, n)
    zero = TensorRat.zero(2, n)

    rep = VerificationReport("limit", "R_first_order", dict(params))
    with timed(rep):
        R = eps_R(n, z, order)
        _compare(rep, "eps^0", R[0], one)
        _compare(rep, "eps^1", R[1], Rbar(n, z))
    reports.append(rep)

    rep = VerificationReport("limit", "Rbar21_inverse", dict(params))
    with timed(rep):
        _compare(rep, "Rbar21(1/z) + Rbar12(z)", Rbar21(n, 1 / z) + Rbar(n, z), zero)
    reports.append(rep)

    # Rbar12(z p^2) - Rbar12(z) as quoted: -4 ε β (12) z / (1 - z)^2 + O(ε^2)
    shift = EpsSeries.of_tensor(Rbar(n, z * h**2), order) - EpsSeries.constant(Rbar(n, z), order)
    quoted = perm12(n).scale(-4 * beta * z / (1 - z) ** 2)
    rep = VerificationReport("limit", "Rbar_shift_quoted", dict(params))
    with timed(rep):
        _compare(rep, "eps^0", shift[0], zero)
        _compare(rep, "eps^1", shift[1], quoted)
    reports.append(rep)
    rep = VerificationReport("limit", "Rbar_shift_derived", dict(params),
                             note="first-order Taylor term 2εβ z Rbar'(z)")
    with timed(rep):
        _compare(rep, "eps^1", shift[1], -quoted)
    reports.append(rep)

    reports.append(_four_lines(n, order, params))
    return reports


def _four_lines(n: int, order: int, params: dict) -> VerificationReport:
    """Each bracketed combination vanishes at ε^0, and ε^{-1}[...] on the right is O(ε)."""
    x, y, h = var("x"), var("y"), var("h")
    rep = VerificationReport("limit", "four_lines", dict(params))
    with timed(rep):
        E = lambda T: EpsSeries.of_tensor(T, order)  # noqa: E731
        R21_yp2x = E(Rbar21(n, y * h**2 / x))
        R12_xy = E(Rbar(n, x / y))
        R21_yx = E(Rbar21(n, y / x))
        R12_xp2y = E(Rbar(n, x * h**2 / y))
        L1 = EpsSeries.constant(_generic_matrix(n), order)
        L2 = EpsSeries.constant(swap12(_generic_matrix(n)), order)
        lines = {
            "first row": R21_yp2x @ R12_xy - R21_yx @ R12_xp2y,
            "second row": L1 @ R21_yp2x + L1 @ R12_xy - R21_yx @ L1 - R12_xp2y @ L1,
            "third row": R21_yp2x @ L2 + L2 @ R12_xy - R21_yx @ L2 - L2 @ R12_xp2y,
        }
        zero = TensorRat.zero(2, n)
        for name, s in lines.items():
            _compare(rep, f"{name} at eps^0", s[0], zero)
        rhs = R12_xp2y - R12_xy - R21_yp2x + R21_yx
        _compare(rep, "right side at eps^0", rhs[0], zero)
        _compare(rep, "right side / eps at eps^0", rhs[1], zero)
    rep.note = "remaining equation: [Lambda1(x), Lambda2(y)] = 0" if rep.passed else ""
    return rep
