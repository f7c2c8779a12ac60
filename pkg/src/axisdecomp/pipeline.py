"""End-to-end analysis orchestration and bundle serialization/serving."""

from __future__ import annotations

import http.server
import json
import threading
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .dataset import load_csv, standardize
from .decomposition import DecompositionConfig, decompose_joint
from .evidence import combine_and_normalize, fill_distortion_table
from .graph_embedding import (
    OBJECTIVES,
    DiversityConfig,
    GraphParams,
    find_representative_projections,
)
from .grassmann import AxisPair, geodesic_path
from .quality import build_histogram, fidelity_scores

BUNDLE_SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Invalid analysis configuration."""


@dataclass(frozen=True)
class AnalysisConfig:
    input_path: str
    label_column: str | None = None
    objective: str = "lpp"
    projections: int = 4
    alpha: float = 1.0
    knn: int = 10
    gamma: float | str = "auto"
    redundancy_tol: float = 0.05
    k: int = 10
    l_max: int = 5
    delta: float = 0.9
    lam: float = 1e-3
    eta0: float = 0.95
    evidence_filter: float = 0.05
    fidelity_k: int = 30
    bins: int = 20
    output_path: str | None = None

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ConfigError(f"objective must be one of {OBJECTIVES}")
        if not 0 <= self.evidence_filter <= 1:
            raise ConfigError("evidence filter must lie in [0, 1]")
        try:
            self.graph_params()
            self.diversity_config()
            self.decomposition_config()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def graph_params(self) -> GraphParams:
        return GraphParams(objective=self.objective, knn=self.knn, gamma=self.gamma)

    def diversity_config(self) -> DiversityConfig:
        return DiversityConfig(
            count=self.projections, alpha=self.alpha, redundancy_tol=self.redundancy_tol
        )

    def decomposition_config(self) -> DecompositionConfig:
        return DecompositionConfig(
            k=self.k, l_max=self.l_max, delta=self.delta, lam=self.lam
        )


def run_analysis(cfg: AnalysisConfig) -> dict:
    """Execute the full pipeline and return the serializable bundle."""
    ds = standardize(load_csv(cfg.input_path, cfg.label_column))
    projections = find_representative_projections(
        ds, cfg.graph_params(), cfg.diversity_config()
    )
    decomps, global_set = decompose_joint(ds, projections, cfg.decomposition_config())
    table = fill_distortion_table(
        ds, projections, global_set, cfg.decomposition_config(), eta0=cfg.eta0
    )
    scores = combine_and_normalize(table)
    pair_row = {pair: i for i, pair in enumerate(table.pair_list)}

    kf = min(cfg.fidelity_k, ds.n - 1)
    linear_nodes = []
    for proj in projections:
        coords = proj.embed(ds.samples)
        rep = fidelity_scores(ds, coords, kf, kf)
        linear_nodes.append(
            {
                "id": f"linear-{proj.order_index}",
                "basis": proj.basis.tolist(),
                "coords": coords.tolist(),
                "fidelity_histogram": _hist_dict(rep.per_point, cfg.bins),
                "mean_fidelity": float(rep.per_point.mean()),
            }
        )

    axis_nodes = []
    for pair in table.pair_list:
        coords = ds.samples[:, list(pair.dims)]
        rep = fidelity_scores(ds, coords, kf, kf)
        axis_nodes.append(
            {
                "id": _axis_id(pair),
                "dims": list(pair.dims),
                "dim_names": [ds.dim_names[pair.p], ds.dim_names[pair.q]],
                "coords": coords.tolist(),
                "fidelity_histogram": _hist_dict(rep.per_point, cfg.bins),
                "mean_fidelity": float(rep.per_point.mean()),
                "evid": float(scores.evid[pair_row[pair]]),
            }
        )

    edges = []
    for proj, dec in zip(projections, decomps):
        for plot in dec.plots:
            row = pair_row[plot.pair]
            mass = float(scores.per_edge_mass[row, proj.order_index])
            evid = float(scores.evid[row])
            path = geodesic_path(proj.basis, plot.pair.selector(ds.d))
            edges.append(
                {
                    "linear_id": f"linear-{proj.order_index}",
                    "axis_id": _axis_id(plot.pair),
                    "mass": mass,
                    "distortion": float(table.values[row, proj.order_index]),
                    "beta": plot.beta,
                    "reused": plot.reused,
                    "filtered": evid * mass < cfg.evidence_filter,
                    "geodesic": {
                        "start_frame": path.start_frame.tolist(),
                        "direction_frame": path.direction_frame.tolist(),
                        "angles": list(path.angles),
                    },
                }
            )

    return {
        "schema_version": BUNDLE_SCHEMA_VERSION,
        "version": __version__,
        "config": _config_dict(cfg),
        "dataset": {
            "dim_names": list(ds.dim_names),
            "labels": list(ds.labels) if ds.labels is not None else None,
            "removed_dims": list(ds.removed_dims),
            "samples": ds.samples.tolist(),
        },
        "linear_nodes": linear_nodes,
        "axis_nodes": axis_nodes,
        "edges": edges,
        "decompositions": [
            {
                "projection_index": dec.projection_index,
                "terminated_by": dec.terminated_by,
                "plots": [
                    {
                        "dims": list(p.pair.dims),
                        "beta": p.beta,
                        "distortion": p.distortion,
                        "reused": p.reused,
                    }
                    for p in dec.plots
                ],
            }
            for dec in decomps
        ],
    }


def _axis_id(pair: AxisPair) -> str:
    return f"axis-{pair.p}-{pair.q}"


def _hist_dict(values, bins: int) -> dict:
    hist = build_histogram(values, bins)
    return {
        "bin_edges": hist.bin_edges.tolist(),
        "counts": hist.counts.tolist(),
    }


def _config_dict(cfg: AnalysisConfig) -> dict:
    out = asdict(cfg)
    return {k: v for k, v in out.items() if k != "output_path"}


def export_bundle(bundle: dict, path) -> None:
    """Write the bundle as deterministic JSON (stable key order, fixed separators)."""
    text = json.dumps(bundle, sort_keys=True, separators=(",", ":"))
    Path(path).write_text(text, encoding="utf-8")


def load_bundle(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


class _BundleHandler(http.server.SimpleHTTPRequestHandler):
    bundle_bytes: bytes = b"{}"

    def do_GET(self):
        if self.path == "/bundle":
            self._send(self.bundle_bytes, "application/json")
        elif self.path == "/health":
            self._send(__version__.encode(), "text/plain")
        else:
            super().do_GET()

    def _send(self, payload: bytes, ctype: str):
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, fmt, *args):
        pass


def make_server(bundle_path, port: int = 8080, assets_dir=None):
    """Read-only HTTP server exposing /bundle, /health and static UI assets."""
    payload = Path(bundle_path).read_bytes()
    directory = str(assets_dir) if assets_dir else str(Path(bundle_path).parent)
    handler = type(
        "Handler",
        (_BundleHandler,),
        {
            "bundle_bytes": payload,
            "__init__": lambda self, *a, **kw: _BundleHandler.__init__(
                self, *a, directory=directory, **kw
            ),
        },
    )
    return http.server.ThreadingHTTPServer(("0.0.0.0", port), handler)


def serve_bundle(bundle_path, port: int = 8080, assets_dir=None) -> None:
    server = make_server(bundle_path, port, assets_dir)
    try:
        server.serve_forever()
    finally:
        server.server_close()
