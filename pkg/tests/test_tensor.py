import itertools

from hypothesis import given, settings, strategies as st

from wshuffle.ratfun import RatFun, var
from wshuffle.tensor import TensorRat

entry = st.sampled_from([RatFun(0), RatFun(1), RatFun(-2), var("x"), 1 / (1 - var("x")), var("q") ** -1])


@st.composite
def ops(draw, k=2, n=2):
    idx = [tuple(r) for r in itertools.product(range(n), repeat=k)]
    ents = {}
    for r in idx:
        for c in idx:
            v = draw(entry)
            if not v.is_zero():
                ents[(r, c)] = v
    return TensorRat.from_ratfuns(k, n, ents)


@given(ops(), ops(), ops())
@settings(max_examples=25, deadline=None)
def test_matmul_associative(A, B, C):
    assert (A @ B) @ C == A @ (B @ C)


@given(ops())
@settings(max_examples=25, deadline=None)
def test_identity_and_flip(A):
    one = TensorRat.identity(2, 2)
    P = TensorRat.permutation(2, 2, 0, 1)
    assert one @ A == A == A @ one
    assert P @ P == one
    assert A.permute((1, 0)) == P @ A @ P


@given(ops(), ops())
@settings(max_examples=25, deadline=None)
def test_trace_cyclic(A, B):
    assert (A @ B).full_trace() == (B @ A).full_trace()


def test_elementary_units():
    E12 = TensorRat.elementary(2, 0, 1)
    E21 = TensorRat.elementary(2, 1, 0)
    assert (E12 @ E21).full_trace() == RatFun(1)
    assert (E12 @ E12).is_zero()
