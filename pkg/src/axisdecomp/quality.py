"""Per-point precision-recall fidelity of 2D embeddings, with histograms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FidelityReport:
    per_point: np.ndarray
    k: int
    k_prime: int


@dataclass(frozen=True)
class Histogram:
    bin_edges: np.ndarray
    counts: np.ndarray


def _neighbor_sets(points: np.ndarray, k: int) -> list[frozenset]:
    """k-nearest neighbors per point, self excluded, distance ties by index."""
    d2 = np.sum((points[:, None, :] - points[None, :, :]) ** 2, axis=-1)
    np.fill_diagonal(d2, np.inf)
    order = np.argsort(d2, axis=1, kind="stable")
    return [frozenset(row[:k].tolist()) for row in order]


def fidelity_scores(ds, embedding: np.ndarray, k: int = 30, k_prime: int = 30) -> FidelityReport:
    """0.5*Precision + 0.5*Recall of neighborhood preservation per point."""
    x = ds.samples if hasattr(ds, "samples") else np.asarray(ds, dtype=float)
    embedding = np.asarray(embedding, dtype=float)
    n = x.shape[0]
    if embedding.shape[0] != n:
        raise ValueError("embedding row count must match the dataset")
    if k >= n or k_prime >= n:
        raise ValueError("k and k_prime must be smaller than n")
    high = _neighbor_sets(x, k)
    low = _neighbor_sets(embedding, k_prime)
    per_point = np.empty(n)
    for i in range(n):
        overlap = len(high[i] & low[i])
        per_point[i] = 0.5 * overlap / k_prime + 0.5 * overlap / k
    return FidelityReport(per_point=per_point, k=k, k_prime=k_prime)


def aggregate_max_fidelity(reports: list[FidelityReport]) -> FidelityReport:
    """Per-point maximum across reports."""
    if not reports:
        raise ValueError("reports must be nonempty")
    n = len(reports[0].per_point)
    if any(len(r.per_point) != n for r in reports):
        raise ValueError("reports must cover the same points")
    stacked = np.vstack([r.per_point for r in reports])
    return FidelityReport(
        per_point=stacked.max(axis=0), k=reports[0].k, k_prime=reports[0].k_prime
    )


def build_histogram(values, bins: int = 20) -> Histogram:
    """Uniform histogram over [0, 1]; the last bin is right-closed."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("cannot histogram an empty vector")
    if bins < 1:
        raise ValueError("bins must be >= 1")
    counts, edges = np.histogram(values, bins=bins, range=(0.0, 1.0))
    return Histogram(bin_edges=edges, counts=counts)
