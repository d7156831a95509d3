"""Synthetic range-bounded datasets and the scale/shift preprocessing.

Two generators:

* five_point: equal mixture of unit point masses at {1/7, ..., 5/7}.
* mixture_e1: equal mixture of Unif(0.1, 0.2), 0.3 + 0.1*Beta(1, 5), a point
  mass at 0.5, 0.6 + 0.1*Beta(0.5, 0.5), and a point mass at 0.9.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import DiffusionConfig
from .errors import ConfigError, DataError
from .rng import RngStream

__all__ = ["Dataset", "FIVE_POINT_ATOMS", "dataset", "sample_five_point",
           "sample_mixture_e1", "preprocess", "postprocess"]

FIVE_POINT_ATOMS = np.array([1.0, 2.0, 3.0, 4.0, 5.0]) / 7.0

KINDS = ("five_point", "mixture_e1", "file")


@dataclass(frozen=True)
class Dataset:
    """Descriptor: kind, closed-form mean, and discrete atoms when applicable."""

    kind: str
    mean: float
    atoms: np.ndarray | None = None
    values: np.ndarray | None = None  # for kind == "file"

    def sample(self, stream: RngStream, n: int) -> np.ndarray:
        if self.kind == "five_point":
            return sample_five_point(stream, n)
        if self.kind == "mixture_e1":
            return sample_mixture_e1(stream, n)
        idx = stream.gen.integers(0, len(self.values), size=n)
        return self.values[idx]


def dataset(kind: str, path: str | None = None) -> Dataset:
    if kind == "five_point":
        return Dataset("five_point", mean=float(FIVE_POINT_ATOMS.mean()),
                       atoms=FIVE_POINT_ATOMS.copy())
    if kind == "mixture_e1":
        # component means: 0.15, 0.3 + 0.1/6, 0.5, 0.65, 0.9
        mean = (0.15 + (0.3 + 0.1 / 6.0) + 0.5 + 0.65 + 0.9) / 5.0
        return Dataset("mixture_e1", mean=mean)
    if kind == "file":
        if path is None:
            raise ConfigError("data.kind = file requires data.file")
        vals = np.loadtxt(path, ndmin=1)
        if vals.size == 0 or np.any(vals < 0.0) or np.any(vals > 1.0):
            raise DataError(f"{path}: values must be non-empty and within [0, 1]")
        return Dataset("file", mean=float(vals.mean()), values=vals)
    raise ConfigError(f"unknown data kind {kind!r}; expected one of {KINDS}")


def sample_five_point(stream: RngStream, n: int) -> np.ndarray:
    """n i.i.d. picks from the five atoms k/7, exact atom values."""
    if n < 1:
        raise ConfigError("n must be >= 1")
    idx = stream.gen.integers(0, 5, size=n)
    return FIVE_POINT_ATOMS[idx]


def sample_mixture_e1(stream: RngStream, n: int) -> np.ndarray:
    """n draws from the five-component mixture of Appendix-style ranges.

    Component supports: [0.1, 0.2], [0.3, 0.4], {0.5}, [0.6, 0.7], {0.9};
    disjoint by construction.
    """
    if n < 1:
        raise ConfigError("n must be >= 1")
    k = stream.gen.integers(0, 5, size=n)
    out = np.empty(n)
    m = k == 0
    out[m] = 0.1 + 0.1 * stream.gen.random(int(m.sum()))
    m = k == 1
    out[m] = 0.3 + 0.1 * stream.gen.beta(1.0, 5.0, size=int(m.sum()))
    out[k == 2] = 0.5
    m = k == 3
    out[m] = 0.6 + 0.1 * stream.gen.beta(0.5, 0.5, size=int(m.sum()))
    out[k == 4] = 0.9
    return out


def preprocess(x_raw, cfg: DiffusionConfig):
    """Affine map into the modeling range: x0 = x_raw * scale + shift."""
    x = np.asarray(x_raw, dtype=float)
    if np.any(x < 0.0) or np.any(x > 1.0) or not np.all(np.isfinite(x)):
        raise DataError("raw data must lie within [0, 1]")
    out = x * cfg.scale + cfg.shift
    return float(out) if np.ndim(x_raw) == 0 else out


def postprocess(x0, cfg: DiffusionConfig):
    """Inverse of preprocess: (x0 - shift) / scale."""
    out = (np.asarray(x0, dtype=float) - cfg.shift) / cfg.scale
    return float(out) if np.ndim(x0) == 0 else out
