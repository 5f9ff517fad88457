"""The trigonometric R-matrix and its companions, with structural checks.

All constructors return :class:`~wshuffle.tensor.TensorRat` objects over two
tensor factors unless stated otherwise.  ``arg`` is any rational function in
the registered variables (typically a ratio of spectral parameters times a
power of ``p`` or ``qbar``).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .ratfun import Field, RatFun, var
from .residues import residue_simple
from .tensor import TensorRat

__all__ = [
    "make_R",
    "make_R21",
    "make_Rtilde_plus",
    "make_Rtilde_minus",
    "make_Qbar_plus",
    "make_Qbar_minus",
    "make_f",
    "make_D",
    "make_colon",
    "make_A",
    "swap12",
    "CheckResult",
    "check_ybe",
    "check_unitarity",
    "check_R_residue",
    "check_property",
    "check_elem1",
    "check_elem2",
    "check_elem3",
    "ALL_CHECKS",
]


def make_R(n: int, arg) -> TensorRat:
    """R(x) on V (x) V with dim V = n."""
    F = Field(n)
    x = F(arg)
    q = F.q
    den = 1 - x
    diag = (q - x / q) / den
    off = q - 1 / q
    ents = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                ents[((i, i), (i, i))] = diag
            else:
                ents[((i, j), (i, j))] = F.one
                ents[((i, j), (j, i))] = off * (x if i < j else F.one) / den
    return TensorRat.from_ratfuns(2, n, ents)


def swap12(X: TensorRat) -> TensorRat:
    return X.permute((1, 0))


def make_R21(n: int, arg) -> TensorRat:
    return swap12(make_R(n, arg))


def make_D(n: int) -> list[RatFun]:
    """Diagonal entries of D = diag(q^2, ..., q^2n)."""
    F = Field(n)
    return [F.qpow(2 * (i + 1)) for i in range(n)]


def make_Rtilde_plus(n: int, arg) -> TensorRat:
    """R~+(x) = R_21(1 / (x qbar^2))."""
    F = Field(n)
    return make_R21(n, 1 / (F(arg) * F.qbar**2))


def make_Rtilde_minus(n: int, arg) -> TensorRat:
    """R~-(x) = D_2 R_21(p^2 / x) D_2^-1."""
    F = Field(n)
    return make_R21(n, F.p**2 / F(arg)).conj_diag(make_D(n), 1)


def _qbar_kernel(n: int, w: RatFun, weight) -> TensorRat:
    F = Field(n)
    ents = {}
    for i in range(n):
        for j in range(n):
            c = -F.q * (w if i <= j else F.one) / (1 - w) * weight(i, j)
            ents[((i, j), (j, i))] = c
    return TensorRat.from_ratfuns(2, n, ents)


def make_Qbar_plus(n: int, arg) -> TensorRat:
    F = Field(n)
    return _qbar_kernel(n, F(arg) * F.qbar**2, lambda i, j: F.one)


def make_Qbar_minus(n: int, arg) -> TensorRat:
    F = Field(n)
    return _qbar_kernel(n, F(arg) / F.p**2, lambda i, j: F.qpow(2 * (j - i)))


def make_f(arg, n: int | None = None) -> RatFun:
    """f(x) = (1 - x q^2)(1 - x q^-2) / (1 - x)^2."""
    x = RatFun.coerce(arg)
    q = var("q", n)
    return (1 - x * q**2) * (1 - x / q**2) / (1 - x) ** 2


def make_colon(n: int, k: int = 2, a: int = 0, b: int = 1) -> TensorRat:
    """(q^-1 - q)(ab) on V^(x)k, 0-based positions."""
    q = Field(n).q
    return TensorRat.permutation(k, n, a, b).scale(1 / q - q)


def make_A(n: int) -> TensorRat:
    """A = sum_ij E_ij (x) E_ij."""
    one = Field(n).one
    ents = {((i, i), (j, j)): one for i in range(n) for j in range(n)}
    return TensorRat.from_ratfuns(2, n, ents)


# --------------------------------------------------------------------------
# structural checks


@dataclass
class CheckResult:
    name: str
    n: int
    passed: bool
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def _compare(name: str, n: int, lhs: TensorRat, rhs: TensorRat) -> CheckResult:
    diff = lhs - rhs
    wit = []
    for (r, c), _ in list(diff.items())[:5]:
        idx = ",".join(f"{a + 1}{b + 1}" for a, b in zip(r, c))
        wit.append((f"entry [{idx}]", str(rhs.entry(r, c)), str(lhs.entry(r, c))))
    return CheckResult(name, n, not wit, wit)


def _z(i):
    return var(f"z{i}")


def check_ybe(n: int) -> CheckResult:
    z1, z2, z3 = _z(1), _z(2), _z(3)
    R12 = make_R(n, z1 / z2).embed((0, 1), 3)
    R13 = make_R(n, z1 / z3).embed((0, 2), 3)
    R23 = make_R(n, z2 / z3).embed((1, 2), 3)
    return _compare("ybe", n, R12 @ R13 @ R23, R23 @ R13 @ R12)


def check_unitarity(n: int) -> CheckResult:
    z = var("x")
    lhs = make_R(n, z) @ make_R21(n, 1 / z)
    return _compare("unitarity", n, lhs, TensorRat.scalar(make_f(z, n), 2, n))


def check_R_residue(n: int) -> CheckResult:
    R = make_R(n, var("x"))
    res = TensorRat.from_ratfuns(2, n, {key: residue_simple(v, "x", 1) for key, v in R.items()})
    return _compare("R_residue", n, res, make_colon(n))


def _conj_D1_inverse(X: TensorRat, n: int) -> TensorRat:
    """D_1^-1 X D_1."""
    return X.conj_diag([1 / d for d in make_D(n)], 0)


def check_property(n: int) -> CheckResult:
    F = Field(n)
    z = var("x", n)
    left = _conj_D1_inverse(make_Rtilde_plus(n, z), n).transpose([0])
    right = make_R(n, z * F.p**2).transpose([0])
    return _compare("property", n, left @ right, TensorRat.identity(2, n))


# four-factor layout for elem 2 / elem 3: slots (1, 2, o, b) -> (0, 1, 2, 3)
_S1, _S2, _SO, _SB = 0, 1, 2, 3


def check_elem2(n: int) -> CheckResult:
    F = Field(n)
    z = var("x", n)
    A1o = make_A(n).embed((_S1, _SO), 4)
    A2b = make_A(n).embed((_S2, _SB), 4)
    Rob = make_R(n, z * F.p**2).transpose([0, 1]).embed((_SO, _SB), 4)
    Rt = _conj_D1_inverse(make_Rtilde_plus(n, z), n).embed((_S1, _S2), 4)
    return _compare("elem2", n, A1o @ Rob @ Rt @ A2b, A1o @ A2b)


def check_elem3(n: int) -> CheckResult:
    z = var("x", n)
    A1o = make_A(n).embed((_S1, _SO), 4)
    A2b = make_A(n).embed((_S2, _SB), 4)
    Rbo = make_R(n, 1 / z).transpose([0, 1]).embed((_SB, _SO), 4)
    R12 = make_R(n, z).embed((_S1, _S2), 4)
    lhs = Rbo @ R12 @ A1o @ A2b
    return _compare("elem3", n, lhs, (A1o @ A2b).scale(make_f(z, n)))


def _random_operator(n: int, rng: random.Random) -> TensorRat:
    """Random constant operator on two factors with small integer entries."""
    ents = {}
    for r in itertools.product(range(n), repeat=2):
        for c in itertools.product(range(n), repeat=2):
            v = rng.randint(-3, 3)
            if v:
                ents[(r, c)] = RatFun.coerce(v)
    return TensorRat.from_ratfuns(2, n, ents)


def check_elem1(n: int, seed: int = 0, trials: int = 2) -> CheckResult:
    """Cancel R_12(zp^2) against D_1^-1 R~+_12(z) D_1 inside Tr_{12}.

    Slots (1, 2, 3); A acts on (2, 3) and B on (1, 3).  Nothing with index 2
    sits between the two factors and nothing with index 1 sits outside them.
    """
    F = Field(n)
    z = var("x", n)
    rng = random.Random(seed)
    R = make_R(n, z * F.p**2).embed((0, 1), 3)
    Rt = _conj_D1_inverse(make_Rtilde_plus(n, z), n).embed((0, 1), 3)
    result = CheckResult("elem1", n, True)
    for _ in range(trials):
        A = _random_operator(n, rng).embed((1, 2), 3)
        B = _random_operator(n, rng).embed((0, 2), 3)
        lhs = (A @ R @ B @ Rt).trace([0, 1])
        rhs = (A @ B).trace([0, 1])
        res = _compare("elem1", n, lhs, rhs)
        if not res:
            return res
    return result


ALL_CHECKS = {
    "ybe": check_ybe,
    "unitarity": check_unitarity,
    "R_residue": check_R_residue,
    "property": check_property,
    "elem1": check_elem1,
    "elem2": check_elem2,
    "elem3": check_elem3,
}
