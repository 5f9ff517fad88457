import itertools
from fractions import Fraction

import pytest

from wshuffle.shuffle import (
    R_omega,
    all_reduced_words,
    arc,
    bar,
    braid_lift,
    degree_slope,
    is_symmetric,
    make_F,
    perm_word,
    shuffle_product,
)


def test_bar_and_arc():
    assert [bar(a, 2) for a in range(-1, 4)] == [1, 2, 1, 2, 1]
    # [1;4) at n = 2 covers colors 1, 2, 1
    assert arc(1, 4, 2) == (2, 1)
    assert arc(3, 3, 3) == (0, 0, 0)


@pytest.mark.parametrize("sigma", list(itertools.permutations(range(3))))
def test_reduced_words_agree(sigma):
    words = all_reduced_words(sigma)
    assert perm_word(sigma) in words
    lifts = [braid_lift(2, 3, w) for w in words]
    assert all(L == lifts[0] for L in lifts)


def test_longest_element_lift():
    assert braid_lift(2, 3, [0, 1, 0]) == R_omega(2, 3)


@pytest.mark.parametrize("n,i,j,k,sign", [(1, 1, 2, 1, 1), (2, 1, 3, 1, -1), (2, 1, 3, 2, 1), (2, 2, 0, 2, -1)])
def test_F_generators_symmetric(n, i, j, k, sign):
    F = make_F(n, i, j, k, sign)
    assert is_symmetric(F.value)[0]
    _, kk, slope = degree_slope(F)
    assert kk == sign * k
    assert slope == sign * Fraction(i - j, k)


def test_shuffle_product_symmetric_and_graded():
    a, b = make_F(2, 1, 2, 1, 1), make_F(2, 2, 4, 1, 1)
    ab = shuffle_product(a, b)
    assert ab.k == 2
    assert is_symmetric(ab.value)[0]
