import random

import pytest
from hypothesis import given, settings, strategies as st

from wshuffle.miura import D, Lam, _product, bar_w, format_poly, miura_check, miura_expand, normalize, normalize_random


def test_r2_display():
    got = miura_expand(2)
    assert format_poly(got[1]) == "Λ^(1)(x) + Λ^(2)(x)"
    assert format_poly(got[2]) == "Λ^(1)(xp^2)Λ^(2)(x)"
    assert format_poly(got[0]) == "1"


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_closed_form(r):
    assert miura_check(r).passed


def test_counts_are_binomial():
    from math import comb

    for r in range(1, 6):
        for k in range(r + 1):
            assert len(bar_w(r, k)) == comb(r, k)


def test_rewrite_rule():
    assert normalize({(D, Lam(1)): 1}) == {(Lam(1, 1), D): 1}
    assert normalize({(D, D, Lam(2)): 1}) == {(Lam(2, 2), D, D): 1}


@given(st.integers(2, 4), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_confluence(r, seed):
    # any redex order reaches the same normal form
    factors = [{(Lam(i, r - i),): 1, (D,): -1} for i in range(1, r + 1)]
    raw = _product(factors)
    assert normalize_random(raw, random.Random(seed)) == normalize(raw)
