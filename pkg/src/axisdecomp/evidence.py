"""Dempster-Shafer evidence scores for axis pairs across linear projections.

Masses are assigned to singleton hypotheses (individual axis pairs), so
Dempster's combination over projections reduces to a product form.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .decomposition import DecompositionConfig, build_secant_system
from .grassmann import AxisPair


@dataclass(frozen=True)
class DistortionTable:
    """Distortion of every selected axis pair against every projection."""

    values: np.ndarray  # |pairs| x P
    pair_list: tuple[AxisPair, ...]
    eta0: float = 0.95

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "pair_list", tuple(self.pair_list))
        if values.ndim != 2 or values.shape[0] != len(self.pair_list):
            raise ValueError("values must be |pairs| x P")
        if np.any(values < 0):
            raise ValueError("distortions must be nonnegative")
        if not 0 < self.eta0 < 1:
            raise ValueError("eta0 must lie in (0, 1)")


@dataclass(frozen=True)
class EvidenceScores:
    mass: np.ndarray  # per pair, in [0, 1)
    evid: np.ndarray  # per pair, max is 1
    per_edge_mass: np.ndarray  # |pairs| x P


def fill_distortion_table(
    ds, projections: list, global_set, cfg: DecompositionConfig, eta0: float = 0.95
) -> DistortionTable:
    """Evaluate every selected pair against every projection's secant system."""
    pairs = sorted(global_set, key=lambda p: p.dims)
    if not pairs:
        raise ValueError("global pair set is empty")
    ordered = sorted(projections, key=lambda p: getattr(p, "order_index", 0))
    values = np.empty((len(pairs), len(ordered)))
    for col, proj in enumerate(ordered):
        system = build_secant_system(ds, proj, cfg.k)
        for row, pair in enumerate(pairs):
            values[row, col] = system.pair_error(pair)
    return DistortionTable(values=values, pair_list=tuple(pairs), eta0=eta0)


def combine_and_normalize(table: DistortionTable) -> EvidenceScores:
    """Per-projection masses, Dempster product combination, and evid scores."""
    values = table.values
    max_all = values.max()
    if max_all <= 0:
        warnings.warn("all distortions are zero; evidence is uniform", stacklevel=2)
        shape = values.shape
        return EvidenceScores(
            mass=np.full(shape[0], 1.0 - (1.0 - table.eta0) ** shape[1]),
            evid=np.ones(shape[0]),
            per_edge_mass=np.full(shape, table.eta0),
        )
    eta = table.eta0 * (1.0 - values / max_all)
    mass = 1.0 - np.prod(1.0 - eta, axis=1)
    if mass.max() <= 0:
        # every pair sits at the global worst distortion (e.g. a single pair)
        warnings.warn("all combined masses are zero; evidence is uniform", stacklevel=2)
        evid = np.ones_like(mass)
    else:
        evid = mass / mass.max()
    return EvidenceScores(mass=mass, evid=evid, per_edge_mass=eta)
