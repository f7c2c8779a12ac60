"""Tabular data ingestion, validation and standardization."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace

import numpy as np


class DatasetError(ValueError):
    """Raised for malformed or unusable input data."""


@dataclass(frozen=True)
class Dataset:
    """An n x d sample matrix with named dimensions and optional class labels.

    Immutable after construction; safe to share across threads.
    """

    samples: np.ndarray
    dim_names: tuple[str, ...]
    labels: tuple[str, ...] | None = None
    standardized: bool = False
    removed_dims: tuple[str, ...] = field(default=())

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "dim_names", tuple(self.dim_names))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(c) for c in self.labels))
        n, d = samples.shape
        if n < 3:
            raise DatasetError(f"need at least 3 samples, got {n}")
        if d < 3:
            raise DatasetError(f"need at least 3 dimensions, got {d}")
        if len(self.dim_names) != d:
            raise DatasetError("dim_names length does not match number of columns")
        if len(set(self.dim_names)) != d:
            raise DatasetError("dimension names must be unique")
        if not np.all(np.isfinite(samples)):
            raise DatasetError("samples contain non-finite entries")
        if self.labels is not None:
            if len(self.labels) != n:
                raise DatasetError("labels length does not match number of rows")
            if len(set(self.labels)) < 2:
                raise DatasetError("labels must contain at least 2 distinct classes")

    @property
    def n(self) -> int:
        return self.samples.shape[0]

    @property
    def d(self) -> int:
        return self.samples.shape[1]


def load_csv(path, label_column: str | None = None) -> Dataset:
    """Load a comma-separated file with a header row into a Dataset.

    The label column (if named) is excluded from the numeric matrix. Any
    missing or non-numeric cell is a hard error reported with its row and
    column; rows are never silently dropped.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"{path}: {exc.strerror or exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: empty file")
        header = [h.strip() for h in header]
        if len(set(header)) != len(header):
            raise DatasetError(f"{path}: duplicate column names in header")
        if label_column is not None and label_column not in header:
            raise DatasetError(f"{path}: label column {label_column!r} not in header")
        label_idx = header.index(label_column) if label_column is not None else None

        rows, labels = [], []
        for lineno, raw in enumerate(reader, start=2):
            if len(raw) != len(header):
                raise DatasetError(
                    f"{path}:{lineno}: expected {len(header)} cells, got {len(raw)}"
                )
            vals = []
            for col, cell in enumerate(raw):
                if col == label_idx:
                    labels.append(cell.strip())
                    continue
                cell = cell.strip()
                if cell == "":
                    raise DatasetError(
                        f"{path}:{lineno}: missing value in column {header[col]!r}"
                    )
                try:
                    vals.append(float(cell))
                except ValueError:
                    raise DatasetError(
                        f"{path}:{lineno}: non-numeric value {cell!r} "
                        f"in column {header[col]!r}"
                    ) from None
            rows.append(vals)

    if not rows:
        raise DatasetError(f"{path}: no data rows")
    dim_names = tuple(h for i, h in enumerate(header) if i != label_idx)
    if len(dim_names) < 3:
        raise DatasetError(f"{path}: fewer than 3 numeric columns")
    return Dataset(
        samples=np.array(rows, dtype=float),
        dim_names=dim_names,
        labels=tuple(labels) if label_idx is not None else None,
        standardized=False,
    )


def standardize(ds: Dataset) -> Dataset:
    """Z-score each column; drop zero-variance columns (recorded on the result)."""
    if ds.standardized:
        raise DatasetError("dataset is already standardized")
    mean = ds.samples.mean(axis=0)
    std = ds.samples.std(axis=0)
    keep = std > 0
    if not keep.any():
        raise DatasetError("all columns have zero variance")
    removed = tuple(name for name, k in zip(ds.dim_names, keep) if not k)
    samples = (ds.samples[:, keep] - mean[keep]) / std[keep]
    kept_names = tuple(name for name, k in zip(ds.dim_names, keep) if k)
    if len(kept_names) < 3:
        raise DatasetError("fewer than 3 columns remain after removing constants")
    return replace(
        ds,
        samples=samples,
        dim_names=kept_names,
        standardized=True,
        removed_dims=removed,
    )
