import pytest

from wshuffle.limit import Rbar, Rbar21, check_limit_identities, eps_expand
from wshuffle.ratfun import Field, RatFun, var


def test_exponential_expansion():
    q, h, b = Field(1).q, var("h"), var("b")
    assert eps_expand(q, 3) == [RatFun(1), RatFun(1), RatFun(1) / 2, RatFun(1) / 6]
    assert eps_expand(h**2, 2) == [RatFun(1), 2 * b, 2 * b * b]
    # 1/(1-q) has a pole at ε = 0 and is rejected
    with pytest.raises(ZeroDivisionError):
        eps_expand(1 / (1 - q))


def test_rbar_inversion_by_hand():
    z = var("z1")
    assert Rbar21(2, 1 / z) == -Rbar(2, z)


def test_shift_sign_by_hand():
    # ε-coefficient of v(z e^{2εβ}) - v(z) is 2βz v'(z); every entry of Rbar
    # has v'(z) = 2/(1-z)^2, so the sign in front of 4εβ z/(1-z)^2 is +
    z, y, b = var("z1"), var("y"), var("b")
    for n in (1, 2):
        for key, v in Rbar(n, z).items():
            deriv = ((v.subs({"z1": y}) - v) / (y - z)).subs({"y": z})
            assert deriv == 2 / (1 - z) ** 2
            assert 2 * b * z * deriv == 4 * b * z / (1 - z) ** 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_identities(n):
    status = {r.name: r.status for r in check_limit_identities(n)}
    assert status == {
        "R_first_order": "pass",
        "Rbar21_inverse": "pass",
        "Rbar_shift_quoted": "fail",
        "Rbar_shift_derived": "pass",
        "four_lines": "pass",
    }
