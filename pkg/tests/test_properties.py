"""Property-based checks for the numeric invariants that hold on any input."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from axisdecomp.evidence import DistortionTable, combine_and_normalize
from axisdecomp.graph_embedding import chordal_distance_sq
from axisdecomp.grassmann import AxisPair, fix_signs, grassmann_least_squares
from axisdecomp.quality import build_histogram

finite = st.floats(
    min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False
)
seeds = st.integers(min_value=0, max_value=2**31 - 1)


def orthonormal(seed, d=5):
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(d, 2)))
    return q


@given(seeds, seeds)
@settings(max_examples=50, deadline=None)
def test_chordal_distance_in_range(s1, s2):
    a, b = orthonormal(s1), orthonormal(s2)
    dist = chordal_distance_sq(a, b)
    assert 0.0 <= dist <= 2.0 + 1e-12


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_fix_signs_preserves_span_and_is_idempotent(seed):
    v = orthonormal(seed)
    fixed = fix_signs(v)
    assert chordal_distance_sq(v, fixed) < 1e-12
    assert np.array_equal(fix_signs(fixed), fixed)
    for j in range(2):
        k = int(np.argmax(np.abs(fixed[:, j])))
        assert fixed[k, j] > 0


@given(seeds, st.floats(min_value=1e-6, max_value=10.0))
@settings(max_examples=30, deadline=None)
def test_least_squares_ridge_shrinks_coefficients(seed, lam):
    v = orthonormal(seed)
    pairs = [AxisPair(p, q) for p in range(5) for q in range(p + 1, 5)]
    free = grassmann_least_squares(v, pairs, lam=1e-9)
    shrunk = grassmann_least_squares(v, pairs, lam=lam)
    assert np.linalg.norm(shrunk) <= np.linalg.norm(free) + 1e-8


@given(
    arrays(
        np.float64,
        st.tuples(st.integers(1, 6), st.integers(1, 4)),
        elements=st.floats(min_value=0.0, max_value=100.0),
    )
)
@settings(max_examples=50, deadline=None)
def test_evidence_bounds_hold_for_any_table(values):
    pairs = [AxisPair(0, i + 1) for i in range(values.shape[0])]
    table = DistortionTable(values=values, pair_list=pairs, eta0=0.95)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        scores = combine_and_normalize(table)
    bound = 1.0 - (1.0 - 0.95) ** values.shape[1]
    assert np.all(scores.mass >= -1e-12)
    assert np.all(scores.mass <= bound + 1e-12)
    assert np.all(scores.evid >= 0)
    assert np.all(scores.evid <= 1.0 + 1e-12)


@given(
    st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=100),
    st.integers(min_value=1, max_value=30),
)
@settings(max_examples=50, deadline=None)
def test_histogram_conserves_count(values, bins):
    hist = build_histogram(values, bins)
    assert hist.counts.sum() == len(values)
    assert len(hist.bin_edges) == bins + 1
