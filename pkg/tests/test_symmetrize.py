from dataclasses import dataclass

import pytest
from hypothesis import given, settings, strategies as st

from meanext import (ArityMismatch, MeanSpec, NonConvergence, WeightedTwo, arithmetic, geometric,
                     symmetrize)
from meanext.means import Family, REAL

WEIGHTED = MeanSpec(WeightedTwo(2 / 3), 2)


def test_weighted_two_thirds():
    r = symmetrize(WEIGHTED, 0.0, 1.0)
    assert r.limit == pytest.approx(0.5, abs=1e-12)
    assert r.pairs[1] == pytest.approx((1 / 3, 2 / 3))


def test_symmetric_mean_one_step():
    r = symmetrize(geometric(2), 1.0, 4.0)
    assert r.iterations == 1
    assert r.limit == pytest.approx(2.0, abs=1e-15)


def test_equal_endpoints():
    r = symmetrize(WEIGHTED, 3.0, 3.0)
    assert r.iterations == 0 and r.limit == 3.0


@given(a=st.floats(-50, 50), b=st.floats(-50, 50), w=st.floats(0.05, 0.95))
@settings(max_examples=100, deadline=None)
def test_argument_order_irrelevant(a, b, w):
    K = MeanSpec(WeightedTwo(w), 2)
    assert symmetrize(K, a, b) == symmetrize(K, b, a)


@given(a=st.floats(-50, 50), d=st.floats(0.0, 50), w=st.floats(0.05, 0.95))
@settings(max_examples=100, deadline=None)
def test_brackets_nest(a, d, w):
    b = a + d
    r = symmetrize(MeanSpec(WeightedTwo(w), 2), a, b)
    for (lo, hi), (lo2, hi2) in zip(r.pairs, r.pairs[1:]):
        assert lo <= lo2 <= hi2 <= hi
    assert a <= r.limit <= b
    # affine weights keep the midpoint
    assert r.limit == pytest.approx((a + b) / 2, abs=1e-9)


def test_trace_capped():
    r = symmetrize(MeanSpec(WeightedTwo(0.999), 2), 0.0, 1.0)
    assert r.iterations > 64
    assert len(r.pairs) == 64


def test_max_iter():
    with pytest.raises(NonConvergence):
        symmetrize(WEIGHTED, 0.0, 1.0, max_iter=3)


def test_stuck_bracket():
    @dataclass(frozen=True)
    class Projection(Family):
        key = "projection-test"
        symmetric = False

        @property
        def default_domain(self):
            return REAL

        def evaluate(self, values):
            return values[0]

    with pytest.raises(NonConvergence):
        symmetrize(MeanSpec(Projection(), 2), 0.0, 1.0)


def test_needs_two_variables():
    with pytest.raises(ArityMismatch):
        symmetrize(arithmetic(3), 0.0, 1.0)
