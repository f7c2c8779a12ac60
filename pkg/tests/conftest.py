import csv
from pathlib import Path

import numpy as np
import pytest

from _climate import write_csv as write_climate_csv

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("data")


@pytest.fixture(scope="session")
def iris_csv(data_dir):
    from sklearn.datasets import load_iris

    iris = load_iris()
    names = [n.replace(" (cm)", "").replace(" ", "_") for n in iris.feature_names]
    path = data_dir / "iris.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names + ["species"])
        for row, lab in zip(iris.data, iris.target):
            writer.writerow(list(row) + [iris.target_names[lab]])
    return path


@pytest.fixture(scope="session")
def wine_csv(data_dir):
    from sklearn.datasets import load_wine

    wine = load_wine()
    names = [
        n.replace("od280/od315_of_diluted_wines", "od280_od315")
        for n in wine.feature_names
    ]
    path = data_dir / "wine.csv"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names + ["cultivar"])
        for row, lab in zip(wine.data, wine.target):
            writer.writerow(list(row) + [f"class_{lab}"])
    return path


@pytest.fixture(scope="session")
def climate_csv(data_dir):
    """Real UCI ensemble if fetched into data/climate.csv, else the synthetic stand-in."""
    real = REPO_ROOT / "data" / "climate.csv"
    if real.exists():
        return real
    path = data_dir / "climate.csv"
    write_climate_csv(path)
    return path


def random_orthonormal(d: int, k: int, rng) -> np.ndarray:
    q, _ = np.linalg.qr(rng.normal(size=(d, k)))
    return q[:, :k]
