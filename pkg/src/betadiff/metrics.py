"""Divergence metrics between generated and reference distributions.

Wasserstein-1 by sorting and averaging elementwise absolute differences; JSD
and Hellinger over a 100-bin probability mass function on [0, 1] (natural log
for JSD). Generated samples are clamped to [0, 1] before binning and the clamp
count is reported, since the Gaussian baseline can leave the range.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DataError

__all__ = ["Pmf100", "wasserstein1", "discrete_reference_vector", "pmf_100",
           "clamp_unit", "jsd", "hellinger"]

N_BINS = 100


@dataclass(frozen=True)
class Pmf100:
    """100 non-negative bin masses over equal-width bins on [0, 1], summing to 1."""

    masses: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.masses, dtype=float)
        if m.shape != (N_BINS,):
            raise DataError(f"pmf must have exactly {N_BINS} bins")
        if np.any(m < 0.0) or abs(m.sum() - 1.0) > 1e-12:
            raise DataError("pmf masses must be non-negative and sum to 1")
        object.__setattr__(self, "masses", m)


def wasserstein1(samples_a: np.ndarray, samples_b: np.ndarray) -> float:
    """Mean |a_i - b_i| over two equal-length ascending-sorted sample vectors."""
    a = np.asarray(samples_a, dtype=float)
    b = np.asarray(samples_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ArgumentError("wasserstein1 needs two equal-length 1-D vectors")
    if np.any(np.diff(a) < 0.0) or np.any(np.diff(b) < 0.0):
        raise ArgumentError("inputs must be sorted ascending")
    return float(np.mean(np.abs(a - b)))


def discrete_reference_vector(atoms: np.ndarray, n: int) -> np.ndarray:
    """Non-decreasing vector of n values with an equal number of copies of each
    unique atom, for Wasserstein-1 against a uniform discrete truth."""
    atoms = np.unique(np.asarray(atoms, dtype=float))
    if n % len(atoms) != 0:
        raise ArgumentError(f"n = {n} is not a multiple of {len(atoms)} atoms")
    return np.repeat(atoms, n // len(atoms))


def clamp_unit(samples: np.ndarray) -> tuple[np.ndarray, int]:
    """Clamp samples to [0, 1]; returns (clamped, number of samples moved)."""
    s = np.asarray(samples, dtype=float)
    clamped = np.clip(s, 0.0, 1.0)
    return clamped, int(np.count_nonzero(clamped != s))


def pmf_100(samples: np.ndarray) -> Pmf100:
    """Normalized 100-bin histogram on [0, 1]; samples equal to 1.0 land in the
    last bin."""
    s = np.asarray(samples, dtype=float)
    if s.size == 0:
        raise DataError("cannot bin an empty sample set")
    if np.any(s < 0.0) or np.any(s > 1.0):
        raise DataError("samples must lie within [0, 1] (clamp first)")
    idx = np.minimum((s * N_BINS).astype(int), N_BINS - 1)
    counts = np.bincount(idx, minlength=N_BINS).astype(float)
    return Pmf100(counts / counts.sum())


def _kl_terms(p: np.ndarray, q: np.ndarray) -> float:
    mask = p > 0.0
    return float(np.sum(p[mask] * (np.log(p[mask]) - np.log(q[mask]))))


def jsd(p: Pmf100, q: Pmf100) -> float:
    """Jensen-Shannon divergence, natural log, in [0, ln 2]; 0*ln 0 := 0."""
    pm, qm = p.masses, q.masses
    m = 0.5 * (pm + qm)
    return 0.5 * _kl_terms(pm, m) + 0.5 * _kl_terms(qm, m)


def hellinger(p: Pmf100, q: Pmf100) -> float:
    """Hellinger distance sqrt(0.5 * sum (sqrt(p_i) - sqrt(q_i))^2), in [0, 1]."""
    return float(np.sqrt(0.5 * np.sum((np.sqrt(p.masses) - np.sqrt(q.masses)) ** 2)))
