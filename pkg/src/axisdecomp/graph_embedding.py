"""Graph-embedding projection search: Laplacian construction, generalized
eigenproblem solve, and the diversity-penalized sequence of 2D projections."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .dataset import Dataset
from .grassmann import fix_signs

OBJECTIVES = ("pca", "lpp", "lde")

NULL_EIGENVALUE_TOL = 1e-10


class SolverError(RuntimeError):
    """The generalized eigenproblem could not be solved reliably."""


@dataclass(frozen=True)
class GraphParams:
    objective: str = "lpp"
    knn: int = 10
    gamma: float | str = "auto"

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}, got {self.objective!r}")
        if self.knn < 1:
            raise ValueError("knn must be positive")
        if self.gamma != "auto" and not self.gamma > 0:
            raise ValueError("gamma must be positive or 'auto'")


@dataclass(frozen=True)
class GraphPair:
    """Similarity Laplacian L and penalty/constraint matrix B."""

    L: np.ndarray
    B: np.ndarray
    connected: bool = True


@dataclass(frozen=True)
class LinearProjection:
    """An orthonormal d x 2 basis together with its search provenance."""

    basis: np.ndarray
    objective_tag: GraphParams
    order_index: int = 0

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float)
        object.__setattr__(self, "basis", basis)
        gram = basis.T @ basis
        if np.linalg.norm(gram - np.eye(2), "fro") >= 1e-10:
            raise ValueError("basis columns are not orthonormal")

    def embed(self, samples: np.ndarray) -> np.ndarray:
        """Project rows of samples into the plane (n x 2)."""
        return samples @ self.basis


@dataclass(frozen=True)
class DiversityConfig:
    count: int = 4
    alpha: float = 1.0
    redundancy_tol: float = 0.05

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.redundancy_tol < 0:
            raise ValueError("redundancy_tol must be nonnegative")


def _knn_sets(x: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k nearest neighbors per row (self excluded, ties by index)."""
    d2 = np.sum((x[:, None, :] - x[None, :, :]) ** 2, axis=-1)
    np.fill_diagonal(d2, np.inf)
    return np.argsort(d2, axis=1, kind="stable")[:, :k]


def build_graphs(ds: Dataset, params: GraphParams) -> GraphPair:
    """Similarity and penalty Laplacians for the requested objective."""
    x = ds.samples
    n = ds.n
    if params.knn >= n:
        raise ValueError(f"knn={params.knn} must be smaller than n={n}")

    if params.objective == "pca":
        w = np.full((n, n), 1.0 / n)
        np.fill_diagonal(w, 0.0)
        b = np.eye(n)
        connected = True
    elif params.objective == "lpp":
        nbrs = _knn_sets(x, params.knn)
        mask = np.zeros((n, n), dtype=bool)
        rows = np.repeat(np.arange(n), params.knn)
        mask[rows, nbrs.ravel()] = True
        mask |= mask.T
        d2 = np.sum((x[:, None, :] - x[None, :, :]) ** 2, axis=-1)
        if params.gamma == "auto":
            gamma = 1.0 / np.median(d2[mask])
        else:
            gamma = float(params.gamma)
        w = np.where(mask, np.exp(-gamma * d2), 0.0)
        np.fill_diagonal(w, 0.0)
        b = np.diag(w.sum(axis=1))
        connected = _is_connected(mask)
    else:  # lde
        if ds.labels is None:
            raise ValueError("LDE requires class labels")
        labels = np.asarray(ds.labels)
        same = labels[:, None] == labels[None, :]
        w = same.astype(float)
        np.fill_diagonal(w, 0.0)
        wp = (~same).astype(float)
        np.fill_diagonal(wp, 0.0)
        b = np.diag(wp.sum(axis=1)) - wp
        connected = True

    lap = np.diag(w.sum(axis=1)) - w
    if not connected:
        warnings.warn("LPP neighborhood graph is disconnected", stacklevel=2)
    return GraphPair(L=lap, B=b, connected=connected)


def _is_connected(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        i = stack.pop()
        for j in np.nonzero(adj[i])[0]:
            if not seen[j]:
                seen[j] = True
                stack.append(j)
    return bool(seen.all())


def solve_projection(
    ds: Dataset,
    graphs: GraphPair,
    diversity_penalty: np.ndarray | None = None,
    params: GraphParams | None = None,
    order_index: int = 0,
) -> LinearProjection:
    """Solve the penalized generalized eigenproblem for one 2D projection.

    PCA takes the top-2 generalized eigenvectors (variance maximization);
    LPP/LDE take the bottom-2 after discarding null directions.
    """
    params = params or GraphParams()
    x = ds.samples.T  # d x n
    d = x.shape[0]
    a = x @ graphs.L @ x.T
    if diversity_penalty is not None:
        pen = np.asarray(diversity_penalty, dtype=float)
        if pen.shape != (d, d):
            raise ValueError("diversity penalty must be d x d")
        # penalized directions must look worse: lower the objective for the
        # maximizing variant, raise it for the minimizing ones
        a = a - pen if params.objective == "pca" else a + pen
    if params.objective == "pca":
        # variance maximization constrains v^T v = 1, not v^T X X^T v = 1;
        # with centered data the latter coincides with the objective itself
        m = np.eye(d)
    else:
        m = x @ graphs.B @ x.T
    a = 0.5 * (a + a.T)
    m = 0.5 * (m + m.T)

    ridge = 1e-8 * np.trace(m) / d
    if np.linalg.cond(m) > 1e12:
        m = m + ridge * np.eye(d)
    try:
        evals, evecs = scipy.linalg.eigh(a, m)
    except np.linalg.LinAlgError:
        m = m + ridge * np.eye(d)
        try:
            evals, evecs = scipy.linalg.eigh(a, m)
        except np.linalg.LinAlgError as exc:
            raise SolverError(
                f"constraint matrix singular (cond ~ {np.linalg.cond(m):.2e})"
            ) from exc

    if params.objective == "pca":
        cols = [d - 1, d - 2]
    else:
        usable = np.nonzero(evals >= NULL_EIGENVALUE_TOL)[0]
        if len(usable) < 2:
            usable = np.arange(d)[-2:]
        cols = list(usable[:2])
    v = evecs[:, cols]
    # eigh returns M-orthonormal vectors; re-orthonormalize in the Euclidean sense
    v, _ = np.linalg.qr(v)
    v = fix_signs(v)
    return LinearProjection(basis=v, objective_tag=params, order_index=order_index)


def chordal_distance_sq(a, b) -> float:
    """Squared chordal distance 2 - ||A^T B||_F^2 between two 2D subspaces."""
    ba = a.basis if hasattr(a, "basis") else np.asarray(a, dtype=float)
    bb = b.basis if hasattr(b, "basis") else np.asarray(b, dtype=float)
    if ba.shape != bb.shape:
        raise ValueError("bases must share the ambient dimension")
    val = 2.0 - np.linalg.norm(ba.T @ bb, "fro") ** 2
    return float(max(val, 0.0))


def is_affine_redundant(y_new: np.ndarray, y_prev: np.ndarray, tol: float) -> bool:
    """True if y_prev is (nearly) an affine image of y_new."""
    y_new = np.asarray(y_new, dtype=float)
    y_prev = np.asarray(y_prev, dtype=float)
    if y_new.shape != y_prev.shape:
        raise ValueError("embeddings must have identical shape")
    centered = y_new - y_new.mean(axis=0)
    if np.linalg.matrix_rank(centered, tol=1e-10) < 2:
        return True
    design = np.column_stack([y_new, np.ones(len(y_new))])
    coef, *_ = np.linalg.lstsq(design, y_prev, rcond=None)
    resid = design @ coef - y_prev
    scale = np.linalg.norm(y_prev - y_prev.mean(axis=0), "fro")
    if scale < 1e-12:
        return True
    return np.linalg.norm(resid, "fro") / scale < tol


def find_representative_projections(
    ds: Dataset, params: GraphParams, cfg: DiversityConfig
) -> list[LinearProjection]:
    """Diverse projection sequence: each new subspace is penalized away from
    the span of all previous ones, with affine-redundant candidates retried
    at doubled alpha (up to 5 doublings)."""
    graphs = build_graphs(ds, params)
    found: list[LinearProjection] = []
    embeddings: list[np.ndarray] = []
    d = ds.d
    # alpha is specified relative to the objective's eigenvalue scale
    x = ds.samples
    penalty_scale = np.trace(x.T @ graphs.L @ x) / d

    while len(found) < cfg.count:
        if not found:
            proj = solve_projection(ds, graphs, None, params, order_index=0)
        else:
            span = sum(p.basis @ p.basis.T for p in found)
            alpha = cfg.alpha * penalty_scale
            proj = None
            for _ in range(6):  # initial try + 5 doublings
                cand = solve_projection(
                    ds, graphs, alpha * span, params, order_index=len(found)
                )
                y = cand.embed(ds.samples)
                if not any(
                    is_affine_redundant(y, prev, cfg.redundancy_tol)
                    for prev in embeddings
                ):
                    proj = cand
                    break
                alpha *= 2.0
            if proj is None:
                warnings.warn(
                    f"stopping after {len(found)} projections: candidates stay "
                    "affine-redundant after 5 alpha doublings",
                    stacklevel=2,
                )
                break
        found.append(proj)
        embeddings.append(proj.embed(ds.samples))
    return found
