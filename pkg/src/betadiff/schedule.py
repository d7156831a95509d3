"""Diffusion schedules alpha(t) and their diagnostics.

Three schedule families:

* beta_linear:   alpha(t) = exp(-0.5 * beta_d * t^2 - beta_min * t)
* sigmoid:       alpha(t) = 1 / (1 + exp(-c0 - (c1 - c0) * t))
* sigmoid_power: alpha(t) = sigmoid(c1) ** t   (sampler-side geometric form,
  used in place of the continuous sigmoid schedule at low step counts)

All are strictly decreasing on [0, 1] with alpha(0) <= 1 and alpha(t) in (0, 1)
for t in (0, 1]. alpha is evaluated at arbitrary continuous t; no tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ConfigError, DomainError

__all__ = ["Schedule", "beta_linear", "sigmoid_schedule", "sigmoid_power",
           "alpha", "snr", "sampling_grid"]

_KINDS = ("beta_linear", "sigmoid", "sigmoid_power")


@dataclass(frozen=True)
class Schedule:
    kind: str
    beta_d: float = 19.9
    beta_min: float = 0.1
    c0: float = 10.0
    c1: float = -13.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ConfigError(f"unknown schedule kind {self.kind!r}; expected one of {_KINDS}")

    def alpha(self, t):
        return alpha(self, t)


def beta_linear(beta_d: float = 19.9, beta_min: float = 0.1) -> Schedule:
    return Schedule("beta_linear", beta_d=beta_d, beta_min=beta_min)


def sigmoid_schedule(c0: float = 10.0, c1: float = -13.0) -> Schedule:
    return Schedule("sigmoid", c0=c0, c1=c1)


def sigmoid_power(c1: float = -13.0) -> Schedule:
    return Schedule("sigmoid_power", c1=c1)


def _sigmoid(x):
    # stable for large |x|
    return np.where(x >= 0, 1.0 / (1.0 + np.exp(-x)), np.exp(x) / (1.0 + np.exp(x)))


def alpha(sched: Schedule, t):
    """Evaluate alpha(t) for t in [0, 1] (scalar or array)."""
    tv = np.asarray(t, dtype=float)
    if np.any(tv < 0.0) or np.any(tv > 1.0) or not np.all(np.isfinite(tv)):
        raise DomainError("schedule time must lie in [0, 1]")
    if sched.kind == "beta_linear":
        out = np.exp(-0.5 * sched.beta_d * tv * tv - sched.beta_min * tv)
    elif sched.kind == "sigmoid":
        out = _sigmoid(sched.c0 + (sched.c1 - sched.c0) * tv)
    else:  # sigmoid_power
        out = _sigmoid(np.asarray(sched.c1, dtype=float)) ** tv
    return float(out) if np.ndim(t) == 0 else out


def snr(sched: Schedule, t, x0, eta):
    """Signal-to-noise ratio alpha_t * x0 * (eta + 1) / (1 - alpha_t * x0)."""
    if np.any(np.asarray(eta) <= 0.0):
        raise DomainError("eta must be > 0")
    ax = alpha(sched, t) * np.asarray(x0, dtype=float)
    if np.any(ax <= 0.0) or np.any(ax >= 1.0):
        raise DomainError("alpha_t * x0 must lie in (0, 1)")
    out = ax * (eta + 1.0) / (1.0 - ax)
    return float(out) if np.ndim(t) == 0 and np.ndim(x0) == 0 else out


def sampling_grid(nfe: int) -> np.ndarray:
    """Reverse-chain time grid t_0 < t_1 < ... < t_J for J = nfe steps.

    t_j = 1 - (1 - 1e-5) * (J - j) / (J - 1) for j = 1..J, and t_0 = 0, so the
    grid runs 0, 1e-5, ..., 1 with J+1 entries.
    """
    J = int(nfe)
    if J < 2:
        raise ConfigError("nfe must be >= 2")
    j = np.arange(1, J + 1, dtype=float)
    # algebraically 1 - (1 - 1e-5)(J - j)/(J - 1); this form hits the anchors
    # t_1 = 1e-5 and t_J = 1 exactly in floating point
    t = 1e-5 + (1.0 - 1e-5) * ((j - 1) / (J - 1))
    return np.concatenate(([0.0], t))


def check_monotone(sched: Schedule, n: int = 1001) -> None:
    """Raise if alpha is not strictly decreasing on a dense grid (config sanity)."""
    t = np.linspace(0.0, 1.0, n)
    a = alpha(sched, t)
    if not np.all(np.diff(a) < 0.0):
        raise ArgumentError(f"schedule {sched} is not strictly decreasing")
