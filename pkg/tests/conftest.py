import sys
from pathlib import Path

import numpy as np
import pytest
from scipy import optimize

sys.path.insert(0, str(Path(__file__).parent))  # expose oracles.py to tests

from betadiff import DiffusionConfig, RngStream, beta_linear
from betadiff.schedule import alpha

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def stream():
    return RngStream(20240817)


@pytest.fixture
def toy_cfg():
    """The synthetic-experiment configuration: eta 1e4, identity scale/shift."""
    return DiffusionConfig(eta=10000.0, scale=1.0, shift=0.0, omega=0.5, pi=0.95,
                           schedule=beta_linear(19.9, 0.1))


@pytest.fixture
def small_cfg():
    """Low concentration variant for quadrature-friendly unit checks."""
    return DiffusionConfig(eta=100.0, scale=1.0, shift=0.0, omega=0.5, pi=0.95,
                           schedule=beta_linear(19.9, 0.1))


def t_for_alpha(sched, target: float) -> float:
    """Invert alpha(t) = target on (0, 1); test helper for examples stated in
    terms of alpha values."""
    return float(optimize.brentq(lambda t: alpha(sched, t) - target, 1e-12, 1.0))


def load_reference(name: str):
    """Rows of tests/data/specfn_reference.txt for one function name."""
    rows = []
    with open(DATA_DIR / "specfn_reference.txt", encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == name:
                rows.append(tuple(float(v) for v in parts[1:]))
    return rows
