import pytest

from wshuffle.ratfun import Field, var
from wshuffle.rmatrix import ALL_CHECKS, make_f, make_R, make_R21
from wshuffle.tensor import TensorRat


def test_rank_one_closed_form():
    # n = 1: R(x) is the scalar (x q^-1 - q) / (x - 1)
    q, x = Field(1).q, var("x")
    R = make_R(1, x)
    assert R == TensorRat.scalar((x / q - q) / (x - 1), 2, 1)


def test_unitarity_scalar_by_hand():
    # R(x) R(1/x) for n = 1, multiplied out by hand
    q, x = Field(1).q, var("x")
    by_hand = (1 + x**2 - (q**2 + q**-2) * x) / (1 - x) ** 2
    assert make_f(x, 1) == by_hand
    assert make_R(1, x) @ make_R21(1, 1 / x) == TensorRat.scalar(by_hand, 2, 1)


def test_R_at_one_is_singular():
    # the pole at x = 1 carries the flip
    q, x = Field(2).q, var("x")
    R = make_R(2, x)
    residue_entry = (R.entry((0, 1), (1, 0)) * (1 - x)).subs({"x": 1})
    assert not residue_entry.is_zero()


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("name", sorted(ALL_CHECKS))
def test_structural_checks(n, name):
    res = ALL_CHECKS[name](n)
    assert res.passed, res.witnesses[:2]
