"""Greedy sparse decomposition of linear projections into axis-aligned plots."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grassmann import (
    AxisPair,
    FullyExplainedError,
    fix_signs,
    grassmann_least_squares,
)


@dataclass(frozen=True)
class SecantSystem:
    """Squared coordinate differences over neighbor pairs of a 2D embedding.

    Row r of C holds the elementwise-squared difference vector of a sample
    pair; b_r is the squared 2D distance of the same pair in the reference
    projection.
    """

    C: np.ndarray
    b: np.ndarray
    pair_index: tuple[tuple[int, int], ...]

    def pair_error(self, pair: AxisPair) -> float:
        """Secant fit error of one axis pair against this system."""
        return float(np.linalg.norm(self.C[:, pair.p] + self.C[:, pair.q] - self.b))


@dataclass(frozen=True)
class SelectedPlot:
    pair: AxisPair
    beta: float
    distortion: float  # secant fit error against the original projection
    fit_error: float = 0.0  # relative error on the residual system it was picked from
    reused: bool = False


@dataclass(frozen=True)
class Decomposition:
    projection_index: int
    plots: tuple[SelectedPlot, ...]
    terminated_by: str  # no_improvement | max_count | fully_explained

    @property
    def pairs(self) -> list[AxisPair]:
        return [p.pair for p in self.plots]


@dataclass(frozen=True)
class DecompositionConfig:
    k: int = 10
    l_max: int = 5
    delta: float = 0.9
    lam: float = 1e-3

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.l_max < 1:
            raise ValueError("l_max must be >= 1")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.lam < 0:
            raise ValueError("lambda must be nonnegative")


def _samples(ds) -> np.ndarray:
    return ds.samples if hasattr(ds, "samples") else np.asarray(ds, dtype=float)


def _basis(v) -> np.ndarray:
    return v.basis if hasattr(v, "basis") else np.asarray(v, dtype=float)


def build_secant_system(ds, v, k: int) -> SecantSystem:
    """Secant system over the k-nearest-neighbor pairs of the projected points.

    Neighborhoods come from the 2D coordinates under v; unordered duplicates
    (i, j)/(j, i) are merged.
    """
    x = _samples(ds)
    basis = _basis(v)
    n = x.shape[0]
    if k >= n:
        raise ValueError(f"k={k} must be smaller than n={n}")
    y = x @ basis
    d2 = np.sum((y[:, None, :] - y[None, :, :]) ** 2, axis=-1)
    np.fill_diagonal(d2, np.inf)
    nbrs = np.argsort(d2, axis=1, kind="stable")[:, :k]

    pairs = sorted({(min(i, j), max(i, j)) for i in range(n) for j in nbrs[i]})
    ii = np.array([p[0] for p in pairs])
    jj = np.array([p[1] for p in pairs])
    c = (x[ii] - x[jj]) ** 2
    b = np.sum((y[ii] - y[jj]) ** 2, axis=1)
    return SecantSystem(C=c, b=b, pair_index=tuple(pairs))


def select_axis_pair(
    sys: SecantSystem, forbidden: set[AxisPair] | None = None
) -> tuple[AxisPair, float]:
    """Greedy two-step pair selection: best single dimension first, then the
    best partner, skipping forbidden pairs. Ties break to the lower index."""
    forbidden = forbidden or set()
    d = sys.C.shape[1]
    single_err = np.linalg.norm(sys.C - sys.b[:, None], axis=0)
    for p in np.argsort(single_err, kind="stable"):
        p = int(p)
        best = None
        for q in range(d):
            if q == p:
                continue
            pair = AxisPair(min(p, q), max(p, q))
            if pair in forbidden:
                continue
            err = sys.pair_error(pair)
            # strict < with ascending q keeps the lowest index on ties
            if best is None or err < best[1]:
                best = (pair, err)
        if best is not None:
            return best
    raise ValueError("all axis pairs are forbidden")


def deflated_residual(v, chosen_dims: set[int]) -> np.ndarray:
    """Residual subspace after removing the chosen axis planes from span(v).

    Projects V V^T onto the orthogonal complement of the chosen coordinate
    axes and returns the top-2 eigenvectors of what remains.
    """
    basis = _basis(v)
    r = basis @ basis.T
    idx = sorted(chosen_dims)
    r[idx, :] = 0.0
    r[:, idx] = 0.0
    if np.linalg.norm(r, "fro") < 1e-12:
        raise FullyExplainedError("projection fully explained by chosen axes")
    w, vecs = np.linalg.eigh(r)
    return fix_signs(vecs[:, [-1, -2]])


def decompose_single(
    ds,
    v,
    cfg: DecompositionConfig,
    global_set: set[AxisPair] | None = None,
    projection_index: int = 0,
) -> Decomposition:
    """Iterative pick / re-fit / re-project loop for one linear projection.

    Pair selection and the improvement test both run against the current
    residual subspace's secants; the recorded distortion of each plot is
    re-measured against the original projection's secants so values are
    comparable across projections. Pairs already in the global set are
    preferred when their fit error is within the delta margin of the fresh
    candidate's.
    """
    global_set = global_set if global_set is not None else set()
    original = build_secant_system(ds, v, cfg.k)
    u = _basis(v)
    # pair, original-system distortion, residual-system fit error, reused
    plots: list[tuple[AxisPair, float, float, bool]] = []
    terminated = "max_count"

    while len(plots) < cfg.l_max:
        system = original if not plots else build_secant_system(ds, u, cfg.k)
        chosen_pairs = {p for p, _, _, _ in plots}
        pair, fit_err = select_axis_pair(system, forbidden=chosen_pairs)
        reused = False
        reusable = [g for g in global_set if g not in chosen_pairs]
        if reusable:
            g_errs = [(system.pair_error(g), g.dims) for g in reusable]
            g_err, g_dims = min(g_errs)
            if g_err <= fit_err / cfg.delta:
                pair, fit_err, reused = AxisPair(*g_dims), g_err, True

        # compare across iterations on a common scale: error relative to the
        # magnitude of the secant system the pair was selected from
        rel_err = fit_err / max(np.linalg.norm(system.b), 1e-12)
        if plots and rel_err >= cfg.delta * min(e for _, _, e, _ in plots):
            terminated = "no_improvement"
            break
        plots.append((pair, original.pair_error(pair), rel_err, reused))

        chosen_dims = {d for p, _, _, _ in plots for d in p.dims}
        try:
            u = deflated_residual(v, chosen_dims)
        except FullyExplainedError:
            terminated = "fully_explained"
            break

    pairs = [p for p, _, _, _ in plots]
    betas = grassmann_least_squares(v, pairs, cfg.lam)
    return Decomposition(
        projection_index=projection_index,
        plots=tuple(
            SelectedPlot(pair=p, beta=float(b), distortion=e, fit_error=f, reused=r)
            for (p, e, f, r), b in zip(plots, betas)
        ),
        terminated_by=terminated,
    )


def decompose_joint(
    ds, projections: list, cfg: DecompositionConfig
) -> tuple[list[Decomposition], set[AxisPair]]:
    """Decompose projections in order, threading the global pair set through."""
    if not projections:
        raise ValueError("projections must be nonempty")
    ordered = sorted(projections, key=lambda p: getattr(p, "order_index", 0))
    global_set: set[AxisPair] = set()
    out = []
    for idx, proj in enumerate(ordered):
        dec = decompose_single(ds, proj, cfg, global_set, projection_index=idx)
        out.append(dec)
        global_set |= set(dec.pairs)
    return out, global_set
