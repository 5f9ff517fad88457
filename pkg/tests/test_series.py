import pytest
from hypothesis import given, settings, strategies as st

from wshuffle.ratfun import Field, RatFun, var
from wshuffle.residues import PoleOrderError, constant_term_iterated, residue_simple
from wshuffle.series import laurent_coeffs

q = Field(1).q
POLES = [q, q**2, q**-1, var("x"), var("x") * q**3]


@given(st.lists(st.tuples(st.integers(0, len(POLES) - 1), st.integers(-3, 3)), min_size=1, max_size=3,
                unique_by=lambda t: t[0]))
@settings(max_examples=30, deadline=None)
def test_delta_identity(parts):
    # expansion near 0 minus expansion near oo = -sum delta(z/a) Res_{z=a} F/z
    z = var("u")
    F = RatFun(0)
    for idx, c in parts:
        F = F + c / (1 - z / POLES[idx])
    N = 4
    at0 = laurent_coeffs(F, "u", -N, N)
    atoo = laurent_coeffs(F, "u", -N, N, at_infinity=True)
    for m in range(-N, N + 1):
        rhs = RatFun(0)
        for idx, _ in parts:
            a = POLES[idx]
            rhs = rhs - a ** (-m) * residue_simple(F / z, "u", a)
        assert at0.get(m, RatFun(0)) - atoo.get(m, RatFun(0)) == rhs


def test_geometric_series():
    x, y = var("x"), var("y")
    co = laurent_coeffs(1 / (1 - y / x), "y", 0, 3)
    assert co == {m: x ** (-m) for m in range(4)}


def test_residues():
    x = var("x")
    assert residue_simple((q - x / q) / (1 - x), "x", 1) == 1 / q - q
    assert residue_simple(1 / (1 - x), "x", 1) == RatFun(-1)
    with pytest.raises(PoleOrderError):
        residue_simple(1 / (1 - x) ** 2, "x", 1)


def test_iterated_constant_term():
    z1, z2 = var("z1"), var("z2")
    assert constant_term_iterated(1 / (1 - z1 / z2), ["z1", "z2"]) == RatFun(1)
    assert constant_term_iterated(z1 / z2, ["z1", "z2"]).is_zero()
