import itertools

import numpy as np
import pytest

from axisdecomp.dataset import load_csv, standardize
from axisdecomp.decomposition import (
    DecompositionConfig,
    build_secant_system,
    decompose_joint,
    decompose_single,
    deflated_residual,
    select_axis_pair,
)
from axisdecomp.graph_embedding import (
    DiversityConfig,
    GraphParams,
    chordal_distance_sq,
    find_representative_projections,
)
from axisdecomp.grassmann import AxisPair, FullyExplainedError
from conftest import random_orthonormal


class TestSecantSystem:
    def test_hand_case_two_points(self):
        # three points so each has a neighbor; focus on the (0, 1) secant
        x = np.array([[0.0, 0.0], [3.0, 4.0], [100.0, 100.0]])
        sys = build_secant_system(x, np.eye(2), k=1)
        assert (0, 1) in sys.pair_index
        r = sys.pair_index.index((0, 1))
        np.testing.assert_allclose(sys.C[r], [9.0, 16.0], atol=1e-12)
        assert sys.b[r] == pytest.approx(25.0, abs=1e-12)

    def test_identity_projection_zero_error(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=(30, 2))
        sys = build_secant_system(x, np.eye(2), k=3)
        assert sys.pair_error(AxisPair(0, 1)) == pytest.approx(0.0, abs=1e-10)

    def test_duplicate_neighbor_pairs_merged(self):
        rng = np.random.default_rng(1)
        x = rng.normal(size=(20, 3))
        sys = build_secant_system(x, random_orthonormal(3, 2, rng), k=5)
        assert len(set(sys.pair_index)) == len(sys.pair_index)
        assert all(i < j for i, j in sys.pair_index)
        assert len(sys.pair_index) <= 20 * 5
        assert sys.C.shape == (len(sys.pair_index), 3)

    def test_iris_system_size(self, iris_csv):
        ds = standardize(load_csv(iris_csv, label_column="species"))
        projs = find_representative_projections(
            ds, GraphParams(objective="lpp"), DiversityConfig(count=1)
        )
        sys = build_secant_system(ds, projs[0], k=10)
        assert len(sys.pair_index) <= 1500
        assert np.all(sys.b >= 0)
        assert np.all(sys.C >= 0)

    def test_k_too_large_rejected(self):
        x = np.random.default_rng(2).normal(size=(5, 3))
        with pytest.raises(ValueError, match="k=5"):
            build_secant_system(x, np.eye(3)[:, :2], k=5)


def exhaustive_best_pair(sys):
    d = sys.C.shape[1]
    best = None
    for p, q in itertools.combinations(range(d), 2):
        err = sys.pair_error(AxisPair(p, q))
        if best is None or err < best[1]:
            best = (AxisPair(p, q), err)
    return best


class TestSelectAxisPair:
    def test_axis_aligned_projection_exact(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=(40, 5))
        v = AxisPair(1, 3).selector(5)
        sys = build_secant_system(x, v, k=4)
        pair, err = select_axis_pair(sys)
        assert pair == AxisPair(1, 3)
        assert err == pytest.approx(0.0, abs=1e-10)

    def test_duplicated_dimension_ties_to_lowest_index(self):
        rng = np.random.default_rng(4)
        base = rng.normal(size=(50, 3))
        # columns 1 and 2 identical: pairs (0,1) and (0,2) tie exactly
        x = np.column_stack([base[:, 0], base[:, 1], base[:, 1], base[:, 2]])
        v = np.zeros((4, 2))
        v[0, 0] = 1.0
        v[1, 1] = 1.0
        sys = build_secant_system(x, v, k=4)
        pair, _ = select_axis_pair(sys)
        assert pair == AxisPair(0, 1)

    def test_forbidden_pair_falls_back(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=(40, 4))
        v = AxisPair(0, 1).selector(4)
        sys = build_secant_system(x, v, k=4)
        pair, err = select_axis_pair(sys, forbidden={AxisPair(0, 1)})
        assert pair != AxisPair(0, 1)
        assert err > 0

    def test_greedy_near_exhaustive_over_seeds(self):
        hits = 0
        for seed in range(20):
            rng = np.random.default_rng(100 + seed)
            x = rng.normal(size=(60, 6))
            v = random_orthonormal(6, 2, rng)
            sys = build_secant_system(x, v, k=5)
            _, greedy_err = select_axis_pair(sys)
            _, best_err = exhaustive_best_pair(sys)
            if greedy_err <= best_err * 1.1 + 1e-12:
                hits += 1
        assert hits >= 18

    def test_all_pairs_forbidden_raises(self):
        rng = np.random.default_rng(6)
        x = rng.normal(size=(20, 3))
        sys = build_secant_system(x, np.eye(3)[:, :2], k=2)
        forbidden = {AxisPair(p, q) for p, q in itertools.combinations(range(3), 2)}
        with pytest.raises(ValueError, match="forbidden"):
            select_axis_pair(sys, forbidden=forbidden)


class TestDeflatedResidual:
    def test_orthogonal_to_removed_axes(self):
        rng = np.random.default_rng(7)
        v = random_orthonormal(6, 2, rng)
        u = deflated_residual(v, {1, 4})
        assert np.linalg.norm(u.T @ u - np.eye(2)) < 1e-10
        assert np.all(np.abs(u[[1, 4], :]) < 1e-10)

    def test_axis_projection_fully_explained(self):
        v = AxisPair(0, 1).selector(4)
        with pytest.raises(FullyExplainedError):
            deflated_residual(v, {0, 1})

    def test_no_removal_recovers_span(self):
        rng = np.random.default_rng(8)
        v = random_orthonormal(5, 2, rng)
        u = deflated_residual(v, set())
        assert chordal_distance_sq(u, v) < 1e-10


@pytest.fixture(scope="module")
def iris_ds(iris_csv):
    return standardize(load_csv(iris_csv, label_column="species"))


@pytest.fixture(scope="module")
def iris_projs(iris_ds):
    return find_representative_projections(
        iris_ds, GraphParams(objective="lpp"), DiversityConfig(count=2)
    )


class TestDecomposeSingle:
    def test_axis_aligned_projection_one_exact_plot(self):
        rng = np.random.default_rng(9)
        x = rng.normal(size=(50, 5))
        v = AxisPair(0, 2).selector(5)
        dec = decompose_single(x, v, DecompositionConfig(k=4))
        assert dec.pairs[0] == AxisPair(0, 2)
        assert dec.plots[0].distortion == pytest.approx(0.0, abs=1e-8)
        assert dec.terminated_by in ("fully_explained", "no_improvement")

    def test_distortions_nonincreasing_relative_fit(self, iris_ds, iris_projs):
        dec = decompose_single(iris_ds, iris_projs[0], DecompositionConfig())
        rel = [p.fit_error for p in dec.plots]
        # each accepted plot beat the delta-scaled best seen so far
        for i in range(1, len(rel)):
            assert rel[i] < 0.9 * min(rel[:i]) + 1e-12

    def test_no_duplicate_pairs(self, iris_ds, iris_projs):
        for proj in iris_projs:
            dec = decompose_single(iris_ds, proj, DecompositionConfig())
            assert len(set(dec.pairs)) == len(dec.pairs)

    def test_l_max_one_terminates_max_count(self, iris_ds, iris_projs):
        dec = decompose_single(iris_ds, iris_projs[0], DecompositionConfig(l_max=1))
        assert len(dec.plots) == 1
        assert dec.terminated_by == "max_count"

    def test_iris_first_projection_two_plots_four_dims(self, iris_ds, iris_projs):
        dec = decompose_single(iris_ds, iris_projs[0], DecompositionConfig())
        assert len(dec.plots) == 2
        dims = {d for p in dec.pairs for d in p.dims}
        assert len(dims) == 4

    def test_betas_are_joint_least_squares(self, iris_ds, iris_projs):
        from axisdecomp.grassmann import grassmann_least_squares

        cfg = DecompositionConfig()
        dec = decompose_single(iris_ds, iris_projs[0], cfg)
        expect = grassmann_least_squares(iris_projs[0], dec.pairs, cfg.lam)
        np.testing.assert_allclose([p.beta for p in dec.plots], expect, atol=1e-12)

    def test_rotation_of_basis_changes_nothing(self, iris_ds, iris_projs):
        theta = 0.4
        rot = np.array(
            [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
        )
        v = iris_projs[0].basis
        a = decompose_single(iris_ds, v, DecompositionConfig())
        b = decompose_single(iris_ds, v @ rot, DecompositionConfig())
        assert a.pairs == b.pairs


class TestDecomposeJoint:
    def test_global_set_is_union_of_pairs(self, iris_ds, iris_projs):
        decs, global_set = decompose_joint(iris_ds, iris_projs, DecompositionConfig())
        assert global_set == {p for d in decs for p in d.pairs}
        assert len(decs) == len(iris_projs)

    def test_reuse_shrinks_or_keeps_pair_count(self, iris_ds, iris_projs):
        cfg = DecompositionConfig()
        _, joint_set = decompose_joint(iris_ds, iris_projs, cfg)
        solo = set()
        for proj in iris_projs:
            solo |= set(decompose_single(iris_ds, proj, cfg).pairs)
        assert len(joint_set) <= len(solo)

    def test_reused_flag_only_for_seen_pairs(self, iris_ds, iris_projs):
        decs, _ = decompose_joint(iris_ds, iris_projs, DecompositionConfig())
        seen = set()
        for dec in decs:
            for plot in dec.plots:
                if plot.reused:
                    assert plot.pair in seen
            seen |= set(dec.pairs)

    def test_empty_projection_list_rejected(self, iris_ds):
        with pytest.raises(ValueError, match="nonempty"):
            decompose_joint(iris_ds, [], DecompositionConfig())

    def test_deterministic(self, iris_ds, iris_projs):
        a, _ = decompose_joint(iris_ds, iris_projs, DecompositionConfig())
        b, _ = decompose_joint(iris_ds, iris_projs, DecompositionConfig())
        assert [d.pairs for d in a] == [d.pairs for d in b]
        assert [tuple(p.beta for p in d.plots) for d in a] == [
            tuple(p.beta for p in d.plots) for d in b
        ]
