"""Additive Gaussian diffusion baseline sharing the generator and schedule.

Forward marginal z_t ~ N(sqrt(alpha_t) x0, 1 - alpha_t); conditional posterior
by Gaussian conjugacy; training loss is a weighted squared error, either
SNR_t * (x0 - x0_hat)^2 (the SNR-weighted negative ELBO, the default baseline)
or the per-step ELBO weight (SNR_s - SNR_t)/2, where SNR_t = alpha_t/(1-alpha_t).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ConfigError, DomainError
from .net import GeneratorNet, forward
from .rng import RngStream
from .schedule import Schedule, alpha, sampling_grid

__all__ = [
    "GaussPosteriorParams", "WEIGHTINGS",
    "gauss_forward_sample", "gauss_posterior", "gauss_elbo_loss",
    "gauss_loss_gradient", "gauss_sample",
]

WEIGHTINGS = ("snr_t", "snr_diff")


@dataclass(frozen=True)
class GaussPosteriorParams:
    """q(z_s | x0, z_t) = N(coef_x0 * x0 + coef_zt * z_t, var)."""

    coef_x0: float | np.ndarray
    coef_zt: float | np.ndarray
    var: float | np.ndarray

    def mean(self, x0, z_t):
        return self.coef_x0 * x0 + self.coef_zt * z_t


def gauss_forward_sample(stream: RngStream, x0, t, sched: Schedule):
    """Draw z_t ~ N(sqrt(alpha_t) x0, 1 - alpha_t)."""
    a_t = alpha(sched, t)
    x0 = np.asarray(x0, dtype=float)
    eps = stream.gen.standard_normal(x0.shape if x0.ndim else None)
    out = np.sqrt(a_t) * x0 + np.sqrt(1.0 - a_t) * eps
    return float(out) if np.ndim(out) == 0 else out


def gauss_posterior(s, t, sched: Schedule) -> GaussPosteriorParams:
    """Coefficients of q(z_s | x0, z_t) for s < t (alpha_s > alpha_t).

    mean = sqrt(a_s)/(1-a_t) * (1 - a_t/a_s) * x0
         + (1-a_s)/(1-a_t) * sqrt(a_t/a_s) * z_t
    var  = (1-a_s)/(1-a_t) * (1 - a_t/a_s)
    """
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(s >= t):
        raise ArgumentError("need s < t")
    a_s = alpha(sched, s)
    a_t = alpha(sched, t)
    if np.any(a_t >= 1.0):
        raise DomainError("posterior undefined at alpha_t = 1")
    ratio = a_t / a_s
    coef_x0 = np.sqrt(a_s) / (1.0 - a_t) * (1.0 - ratio)
    coef_zt = (1.0 - a_s) / (1.0 - a_t) * np.sqrt(ratio)
    var = (1.0 - a_s) / (1.0 - a_t) * (1.0 - ratio)
    if np.ndim(coef_x0) == 0:
        return GaussPosteriorParams(float(coef_x0), float(coef_zt), float(var))
    return GaussPosteriorParams(coef_x0, coef_zt, var)


def _weight(s, t, sched: Schedule, weighting: str):
    if weighting not in WEIGHTINGS:
        raise ConfigError(f"weighting must be one of {WEIGHTINGS}")
    a_t = alpha(sched, t)
    if weighting == "snr_t":
        return a_t / (1.0 - a_t)
    a_s = alpha(sched, np.asarray(s, dtype=float))
    return 0.5 * (a_s / (1.0 - a_s) - a_t / (1.0 - a_t))


def gauss_elbo_loss(x0, x0_hat, s, t, sched: Schedule, weighting: str = "snr_t"):
    """Weighted squared error; snr_t reproduces the SNR-weighted negative ELBO."""
    out = _weight(s, t, sched, weighting) * (np.asarray(x0, dtype=float) - x0_hat) ** 2
    return float(out) if np.ndim(out) == 0 else out


def gauss_loss_gradient(x0, x0_hat, s, t, sched: Schedule, weighting: str = "snr_t"):
    """d(gauss_elbo_loss)/d(x0_hat)."""
    out = -2.0 * _weight(s, t, sched, weighting) * (np.asarray(x0, dtype=float) - x0_hat)
    return float(out) if np.ndim(out) == 0 else out


def gauss_sample(net: GeneratorNet, sched: Schedule, nfe: int, stream: RngStream,
                 n: int = 1) -> np.ndarray:
    """Ancestral reverse sampling: z_{t_J} ~ N(0, 1), then substitute the
    generator's x0 estimate into the conditional posterior at every step.

    Returns the final x0 estimates, shape (n,). The last step (t_1 -> t_0 = 0,
    alpha = 1 under the beta-linear schedule) collapses the posterior onto the
    estimate, so no z draw is needed there.
    """
    grid = sampling_grid(nfe)
    z = stream.gen.standard_normal(n)
    x_hat = np.empty(n)
    for j in range(len(grid) - 1, 0, -1):
        t_j, t_prev = grid[j], grid[j - 1]
        x_hat = forward(net, z, np.full(n, t_j))
        post = gauss_posterior(t_prev, t_j, sched)
        mean = post.mean(x_hat, z)
        z = mean + np.sqrt(post.var) * stream.gen.standard_normal(n)
    return x_hat
