"""The pairing between A+ and A-.

Two integral formulas are implemented: ``pair_P1`` takes a word of degree-one
elements on the A+ side, ``pair_P2`` a word on the A- side.  Both integrate
by iterated constant-term extraction in the regime |z1| << ... << |zk|.
``pair_combinatorial`` evaluates the closed forms for F-generators.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .ratfun import Field, RatFun, var
from .residues import constant_term_iterated
from .rmatrix import make_f, make_Rtilde_minus, make_Rtilde_plus
from .shuffle import R_omega, ShuffleElem, ShuffleError, zname
from .tensor import TensorRat

__all__ = [
    "pairing_kernel",
    "pair_with_kernel",
    "pair_P1",
    "pair_P2",
    "pair_combinatorial",
    "strings_together",
    "word_value",
]


def word_value(word: Sequence[TensorRat | ShuffleElem]) -> list[TensorRat]:
    out = []
    for w in word:
        v = w.value if isinstance(w, ShuffleElem) else w
        if v.k != 1:
            raise ShuffleError("word letters must be degree-one elements")
        out.append(v)
    return out


def _f_denominator(n: int, k: int) -> RatFun:
    acc = Field(n).one
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            acc = acc * make_f(var(zname(i), n) / var(zname(j), n), n)
    return acc


def pairing_kernel(n: int, word: Sequence[TensorRat], sign: int) -> TensorRat:
    """(q^2-1)^k R_omega prod_a [L_a(z_a) prod_{b>a} R~_ab(z_a/z_b)] / prod f.

    ``sign=+1`` uses R~+ (the A+ word of the first formula), ``sign=-1`` R~-.
    """
    F = Field(n)
    k = len(word)
    Rt = make_Rtilde_plus if sign > 0 else make_Rtilde_minus
    K = R_omega(n, k)
    for a in range(1, k + 1):
        La = word[a - 1].rename({"z1": zname(a)} if a != 1 else {})
        K = K @ La.embed((a - 1,), k)
        for b in range(a + 1, k + 1):
            K = K @ Rt(n, var(zname(a), n) / var(zname(b), n)).embed((a - 1, b - 1), k)
    scal = (F.q**2 - 1) ** k / _f_denominator(n, k)
    return K.scale(scal)


def _trace_product(K: TensorRat, X: TensorRat) -> RatFun:
    """Tr(K X) as a single rational function."""
    byrow = {}
    for (r, c), v in X.entries.items():
        byrow[(r, c)] = v
    acc = None
    for (r, c), v in K.entries.items():
        w = byrow.get((c, r))
        if w is not None:
            acc = v * w if acc is None else acc + v * w
    if acc is None:
        return RatFun(0, n=K.nf)
    return RatFun(acc, K.den * X.den, K.nf if K.nf is not None else X.nf)


def pair_with_kernel(K: TensorRat, X: TensorRat) -> RatFun:
    k = K.k
    integrand = _trace_product(K, X)
    return constant_term_iterated(integrand, [zname(a) for a in range(1, k + 1)])


def _vdeg_mismatch(k_word: int, X: ShuffleElem) -> bool:
    return k_word != X.k


def pair_P1(I_word: Sequence[TensorRat | ShuffleElem], Xminus: ShuffleElem) -> RatFun:
    """<I_1 * ... * I_k, X^->."""
    if Xminus.sign > 0:
        raise ShuffleError("second argument must lie in A-")
    word = word_value(I_word)
    n = Xminus.n
    if _vdeg_mismatch(len(word), Xminus):
        return Field(n).zero
    if not word:
        return Field(n).one
    K = pairing_kernel(n, word, +1)
    return pair_with_kernel(K, Xminus.value)


def pair_P2(Xplus: ShuffleElem, J_word: Sequence[TensorRat | ShuffleElem]) -> RatFun:
    """<X^+, J_1 * ... * J_k>."""
    if Xplus.sign < 0:
        raise ShuffleError("first argument must lie in A+")
    word = word_value(J_word)
    n = Xplus.n
    if _vdeg_mismatch(len(word), Xplus):
        return Field(n).zero
    if not word:
        return Field(n).one
    K = pairing_kernel(n, word, -1)
    return pair_with_kernel(K, Xplus.value)


# --------------------------------------------------------------------------
# closed forms


def _same_class(a: tuple[int, int], b: tuple[int, int], n: int) -> bool:
    return (a[0] - b[0]) % n == 0 and (a[0] - b[0]) == (a[1] - b[1])


def strings_together(arcs: Sequence[tuple[int, int]], i: int, j: int, n: int) -> bool:
    """Do the arcs [a_1;b_1), ..., [a_t;b_t) string together to form [j; i)?"""
    from .shuffle import arc

    if not arcs:
        return i == j
    for (a1, b1), (a2, b2) in zip(arcs, arcs[1:]):
        if (b1 - a2) % n:
            return False
    total = [0] * n
    for a, b in arcs:
        total = [x + y for x, y in zip(total, arc(a, b, n))]
    if tuple(total) != arc(j, i, n):
        return False
    return (arcs[0][0] - j) % n == 0


def pair_combinatorial(n: int, plus: tuple[int, int, int], minus_word: Sequence[tuple[int, int, int]]) -> RatFun:
    """<F^{(k)}_{ij}, F^{(-k_1)}_{a_1 b_1} ... F^{(-k_t)}_{a_t b_t}> for one slope.

    ``plus = (i, j, k)`` and each minus factor is ``(a, b, k_s)``.  All slopes
    must agree; the value is (1-q^-2)^t when the arcs string together to
    [j; i) and the vertical degrees match, and 0 otherwise.
    """
    F = Field(n)
    i, j, k = plus
    if not minus_word:
        return F.zero
    if sum(ks for _, _, ks in minus_word) != k:
        return F.zero
    mu = Fraction(i - j, k)
    for a, b, ks in minus_word:
        if Fraction(b - a, ks) != mu:
            raise ShuffleError("pair_combinatorial needs slope-homogeneous arguments")
    arcs = [(a, b) for a, b, _ in minus_word]
    if not strings_together(arcs, i, j, n):
        return F.zero
    return (1 - F.qpow(-2)) ** len(minus_word)
