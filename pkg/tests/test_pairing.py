import itertools

import pytest

from wshuffle.pairing import pair_combinatorial, pair_P1, pair_P2, strings_together
from wshuffle.ratfun import Field
from wshuffle.shuffle import make_F, make_F_minus, make_F_plus, shuffle_word


@pytest.mark.parametrize("i,j,ip,jp", list(itertools.product((1, 2), (0, 2, 3), (1, 2), (0, 2, 3))))
def test_degree_one_pairing(i, j, ip, jp):
    F = Field(2)
    expected = (1 - F.qpow(-2)) if (i, j) == (ip, jp) else F.zero
    assert pair_P1([make_F_plus(2, i, j, 1)], make_F_minus(2, jp, ip, 1)) == expected
    assert pair_P2(make_F_plus(2, i, j, 1), [make_F_minus(2, jp, ip, 1)]) == expected


def test_strings_together():
    # [1;2) then [2;3) strings to [1;3) at n = 2
    assert strings_together([(1, 2), (2, 3)], 3, 1, 2)
    assert not strings_together([(1, 2), (1, 2)], 3, 1, 2)
    assert strings_together([], 2, 2, 2)


def test_vertical_degree_mismatch_is_zero():
    Fp = make_F_plus(2, 1, 3, 2)
    assert pair_P2(Fp, [make_F_minus(2, 3, 1, 1)]).is_zero()


@pytest.mark.parametrize("I,J", [
    ([(1, 2), (2, 3)], [(3, 2), (2, 1)]),
    ([(1, 1), (2, 2)], [(2, 2), (1, 1)]),
    ([(1, 0), (2, 3)], [(3, 2), (0, 1)]),
])
def test_two_routes_agree(I, J):
    plus = [make_F(2, i, j, 1, 1) for i, j in I]
    minus = [make_F(2, i, j, 1, -1) for i, j in J]
    assert pair_P1(plus, shuffle_word(minus)) == pair_P2(shuffle_word(plus), minus)


def test_pair_f_stringing_value():
    # two arcs of slope 1 stringing to [1;3) at level 2
    F = Field(2)
    val = pair_P2(make_F_plus(2, 3, 1, 2), [make_F_minus(2, 1, 2, 1), make_F_minus(2, 2, 3, 1)])
    assert val == pair_combinatorial(2, (3, 1, 2), [(1, 2, 1), (2, 3, 1)])
    assert val == (1 - F.qpow(-2)) ** 2
