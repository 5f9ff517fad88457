from hypothesis import given, settings, strategies as st

from wshuffle.ratfun import Field
from wshuffle.shuffle import bar
from wshuffle.wrels import (
    JWord,
    Window,
    WRelInstance,
    all_jwords,
    alpha,
    pairw_check_jword,
    pairw_check_single,
    residues_crosscheck,
    w_truncate,
    wrels_check,
)


def _alpha_by_counting(v):
    """Each step contributes the lattice points (x, y), 0 < x < d, y >= 1,
    on or under the segment to (d, k), plus k times the distance already covered."""
    total, offset = 0, 0
    for d, k in v:
        total += sum(1 for x in range(1, d) for y in range(1, k + 1) if y * d <= k * x)
        total += k * offset
        offset += d
    return total


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(1, 6)), min_size=1, max_size=4))
@settings(max_examples=200, deadline=None)
def test_alpha_matches_lattice_count(v):
    assert alpha(v) == _alpha_by_counting(v)


def test_alpha_small_values():
    assert alpha([(2, 2)]) == 1
    assert alpha([(1, 1)]) == 0
    assert alpha([(0, 5)]) == 0


def test_level_one_is_exact():
    tr = w_truncate(2, 1, 0, 1, Window(0, 0))
    assert len(tr) == 1
    (t,) = tr.terms
    assert t.path == (1, 0)
    assert t.coefficient == Field(2).p_frac(2 * (alpha([(1, 1)]) - bar(0, 2)))


def test_level_zero_is_identity():
    assert len(w_truncate(2, 1, 1, 0)) == 1
    assert len(w_truncate(2, 1, 2, 0)) == 0


def test_enlarging_window_only_adds_terms():
    small = {(t.path, t.composition) for t in w_truncate(2, 1, -1, 2, Window(2, 3)).terms}
    big = {(t.path, t.composition) for t in w_truncate(2, 1, -1, 2, Window(3, 5)).terms}
    assert small < big


def test_series_window_size():
    assert Window.for_series(2, 3, 4) == Window(14, 14)


def test_all_jwords_count():
    assert len(all_jwords(1, 2)) == 9
    assert len(all_jwords(2, 1)) == 12


def test_pair_w_single_and_word():
    assert pairw_check_single(2, 1, 0, 2).passed
    assert pairw_check_jword(JWord(2, ((1, 2, 0), (2, 1, 1)))).passed


def test_relation_one_instance():
    rep = wrels_check(WRelInstance(1, 1, 1, JWord(1, ((1, 1, 0), (1, 1, 1)))))
    assert rep.passed, rep.witnesses[:2]


def test_quotient_instance_vanishes():
    rep = wrels_check(WRelInstance(1, 1, 2, JWord(1, ((1, 1, 0),) * 3), r=1))
    assert rep.passed


def test_residue_reconstruction_instance():
    rep = residues_crosscheck(1, 1, 1, JWord(1, ((1, 1, -1), (1, 1, 1))))
    assert rep.status in ("pass", "inconclusive")
