"""Geometry of 2D subspaces: least squares over axis-aligned planes,
residual extraction, and geodesic interpolation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class FullyExplainedError(RuntimeError):
    """The residual is numerically zero; nothing is left to decompose."""


@dataclass(frozen=True)
class AxisPair:
    """Unordered pair of dimension indices naming an axis-aligned plane."""

    p: int
    q: int

    def __post_init__(self):
        if not (0 <= self.p < self.q):
            raise ValueError(f"need 0 <= p < q, got ({self.p}, {self.q})")

    @property
    def dims(self) -> tuple[int, int]:
        return (self.p, self.q)

    def selector(self, d: int) -> np.ndarray:
        """The d x 2 matrix with columns e_p, e_q."""
        z = np.zeros((d, 2))
        z[self.p, 0] = 1.0
        z[self.q, 1] = 1.0
        return z


@dataclass(frozen=True)
class GeodesicPath:
    """Parameterization of the geodesic between two 2D subspaces.

    frame(t) = cos(t*theta_k) * start[:, k] + sin(t*theta_k) * direction[:, k]
    is orthonormal for every t.
    """

    start_frame: np.ndarray
    direction_frame: np.ndarray
    angles: tuple[float, float]

    def frame(self, t: float) -> np.ndarray:
        th = np.asarray(self.angles)
        return self.start_frame * np.cos(t * th) + self.direction_frame * np.sin(t * th)


def fix_signs(basis: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive."""
    basis = basis.copy()
    for j in range(basis.shape[1]):
        k = int(np.argmax(np.abs(basis[:, j])))
        if basis[k, j] < 0:
            basis[:, j] = -basis[:, j]
    return basis


def _basis_of(v) -> np.ndarray:
    return v.basis if hasattr(v, "basis") else np.asarray(v, dtype=float)


def grassmann_least_squares(v, pairs: list[AxisPair], lam: float = 1e-3) -> np.ndarray:
    """Ridge least-squares fit of sum_i beta_i Z_i Z_i^T to V V^T in Frobenius norm.

    Solved via the normal equations on the projector inner products; the
    Gram entry for two axis pairs is the size of their index intersection.
    """
    if not pairs:
        raise ValueError("pairs must be nonempty")
    if len(set(p.dims for p in pairs)) != len(pairs):
        raise ValueError("pairs must be distinct")
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    basis = _basis_of(v)
    m = len(pairs)
    gram = np.empty((m, m))
    for i, a in enumerate(pairs):
        for j, b in enumerate(pairs):
            gram[i, j] = len(set(a.dims) & set(b.dims))
    # <VV^T, Z Z^T>_F = squared norm of the two selected rows of V
    rhs = np.array([np.sum(basis[list(p.dims), :] ** 2) for p in pairs])
    # lstsq: the unregularized Gram matrix can be singular for a full dictionary
    beta, *_ = np.linalg.lstsq(gram + lam * np.eye(m), rhs, rcond=None)
    return beta


def residual_subspace(v, pairs: list[AxisPair], betas) -> np.ndarray:
    """Top-2 algebraic eigenvectors of R = V V^T - sum beta_i Z_i Z_i^T."""
    basis = _basis_of(v)
    betas = np.asarray(betas, dtype=float)
    if len(pairs) != len(betas):
        raise ValueError("pairs and betas must have equal length")
    d = basis.shape[0]
    r = basis @ basis.T
    for p, b in zip(pairs, betas):
        r[p.p, p.p] -= b
        r[p.q, p.q] -= b
    if np.linalg.norm(r, "fro") < 1e-12:
        raise FullyExplainedError("residual is numerically zero")
    w, vecs = np.linalg.eigh(r)
    u = vecs[:, [-1, -2]]
    # eigh returns orthonormal columns; fix orientation only
    return fix_signs(u)


ZERO_ANGLE_TOL = 1e-7


def _complete_direction(start: np.ndarray, direction: np.ndarray, k: int) -> np.ndarray:
    """Fill unused direction column k (zero angle) with a unit vector
    orthogonal to the start frame, preferring orthogonality to the other
    direction column when the ambient space allows it."""
    d = start.shape[0]
    others = [direction[:, j] for j in range(direction.shape[1]) if j != k]
    blocks = [np.column_stack([start] + [o[:, None] for o in others]), start]
    for block in blocks:
        for cand in np.eye(d).T:
            resid = cand - block @ (block.T @ cand)
            nrm = np.linalg.norm(resid)
            if nrm > 1e-6:
                return resid / nrm
    raise RuntimeError("could not complete geodesic direction frame")


def geodesic_path(v0, v1) -> GeodesicPath:
    """Geodesic from span(v0) to span(v1) via principal angles and vectors."""
    b0, b1 = _basis_of(v0), _basis_of(v1)
    if b0.shape != b1.shape:
        raise ValueError("bases must share the ambient dimension")
    u, s, wt = np.linalg.svd(b0.T @ b1)
    # keep the start frame a pure in-plane rotation of b0 (flipping one
    # principal vector on each side leaves the product unchanged)
    if np.linalg.det(u) < 0:
        u[:, 1] *= -1.0
        wt[1, :] *= -1.0
    s = np.clip(s, 0.0, 1.0)
    angles = np.arccos(s)
    angles[angles < ZERO_ANGLE_TOL] = 0.0
    start = b0 @ u
    target = b1 @ wt.T
    direction = np.zeros_like(start)
    for k in range(2):
        if angles[k] > 0.0:
            direction[:, k] = (target[:, k] - s[k] * start[:, k]) / np.sin(angles[k])
    for k in range(2):
        if angles[k] == 0.0:
            direction[:, k] = _complete_direction(start, direction, k)
    return GeodesicPath(
        start_frame=start,
        direction_frame=direction,
        angles=(float(angles[0]), float(angles[1])),
    )
