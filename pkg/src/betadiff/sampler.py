"""Reverse beta diffusion generation.

One chain: draw the terminal latent from the prior marginal built from the
dataset mean, then walk the time grid backwards, at each step estimating x0
with the generator, drawing the additive-increment beta variable in logit
space (ln u - ln v), and folding it in with the stabilized logit-space update.
The latent trajectory is monotone non-decreasing in z by construction, which
is asserted every step.

Chains are vectorized: each step draws one batched variate block across all
chains in a chunk, with per-chunk split streams, so results are deterministic
by seed and independent of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .chain import (DiffusionConfig, reverse_conditional_params,
                    reverse_update_logit, sigmoid, viz_transform)
from .errors import ConfigError, NumericAbort
from .net import GeneratorNet, forward, generator_input
from .rng import BetaParams, RngStream, sample_beta_logit
from .schedule import Schedule, alpha, sampling_grid, sigmoid_power

__all__ = ["SamplerConfig", "Trajectory", "resolve_sampling_schedule",
           "sample_one", "sample_many"]

ALPHA_BRANCHES = ("auto", "sigmoid", "power")
RETURN_MODES = ("xhat", "z_rescaled")

_CHUNK = 25000  # chains per vectorized block; fixed so multisets are reproducible


@dataclass(frozen=True)
class SamplerConfig:
    nfe: int = 200
    return_mode: str = "xhat"
    capture_trajectory: bool = False
    alpha_branch: str = "auto"
    x0_mean: float = 0.5  # E[x0] of the raw data, before scale/shift

    def __post_init__(self):
        if self.nfe < 2:
            raise ConfigError("nfe must be >= 2")
        if self.return_mode not in RETURN_MODES:
            raise ConfigError(f"return_mode must be one of {RETURN_MODES}")
        if self.alpha_branch not in ALPHA_BRANCHES:
            raise ConfigError(f"alpha_branch must be one of {ALPHA_BRANCHES}")
        if not 0.0 < self.x0_mean < 1.0:
            raise ConfigError("x0_mean must lie in (0, 1)")


@dataclass(frozen=True)
class Trajectory:
    """Per-chain reverse trajectories: times (J+1,), viz values and x0-hat
    estimates (n_chains, J+1), ordered from t_J down to t_0."""

    times: np.ndarray
    z_viz: np.ndarray
    x_hat: np.ndarray


def resolve_sampling_schedule(cfg: DiffusionConfig, scfg: SamplerConfig) -> Schedule:
    """Pick the alpha form for sampling.

    auto: a sigmoid-trained model switches to the geometric sigmoid(c1)**t form
    at nfe <= 350; other schedules sample with their training schedule.
    sigmoid: always the continuous training schedule. power: always the
    geometric form (sigmoid-family schedules only).
    """
    sched = cfg.schedule
    if scfg.alpha_branch == "sigmoid":
        return sched
    if scfg.alpha_branch == "power":
        if sched.kind not in ("sigmoid", "sigmoid_power"):
            raise ConfigError("power alpha branch needs a sigmoid-family schedule (c1)")
        return sigmoid_power(sched.c1)
    if sched.kind == "sigmoid" and scfg.nfe <= 350:
        return sigmoid_power(sched.c1)
    return sched


def _run_chains(net: GeneratorNet, cfg: DiffusionConfig, scfg: SamplerConfig,
                n: int, stream: RngStream, capture: bool):
    sched = resolve_sampling_schedule(cfg, scfg)
    scfg_cfg = replace(cfg, schedule=sched)
    grid = sampling_grid(scfg.nfe)
    J = scfg.nfe

    xh_init = scfg.x0_mean * cfg.scale + cfg.shift
    a_J = alpha(sched, grid[J])
    logit_z = sample_beta_logit(
        stream, BetaParams(np.full(n, cfg.eta * a_J * xh_init),
                           np.full(n, cfg.eta * (1.0 - a_J * xh_init))))

    times = grid[::-1].copy()
    z_viz = x_tr = None
    if capture:
        z_viz = np.empty((n, J + 1))
        x_tr = np.empty((n, J + 1))
        z_viz[:, 0] = viz_transform(scfg_cfg, logit_z, grid[J])
        x_tr[:, 0] = xh_init

    x_hat = np.full(n, xh_init)
    for j in range(J, 0, -1):
        t_j, t_prev = grid[j], grid[j - 1]
        z_in = generator_input(net, cfg, logit_z, np.full(n, t_j))
        raw = forward(net, z_in, np.full(n, t_j))
        x_hat = raw * cfg.scale + cfg.shift
        p = reverse_conditional_params(scfg_cfg, x_hat, t_prev, t_j)
        logit_p = sample_beta_logit(stream, p)
        new_logit = reverse_update_logit(logit_z, logit_p)
        if not np.all(np.isfinite(new_logit)):
            raise NumericAbort(f"non-finite latent logit at reverse step j={j}")
        if np.any(new_logit < logit_z):
            raise NumericAbort(f"latent decreased at reverse step j={j}")
        logit_z = new_logit
        if capture:
            k = J - j + 1
            z_viz[:, k] = viz_transform(scfg_cfg, logit_z, t_prev)
            x_tr[:, k] = x_hat

    if scfg.return_mode == "xhat":
        out = (x_hat - cfg.shift) / cfg.scale
    else:
        a_0 = alpha(sched, grid[0])
        out = (sigmoid(logit_z) / a_0 - cfg.shift) / cfg.scale
    traj = Trajectory(times, z_viz, x_tr) if capture else None
    return out, traj


def sample_one(net: GeneratorNet, cfg: DiffusionConfig, scfg: SamplerConfig,
               stream: RngStream):
    """Generate one value; returns (value, Trajectory | None)."""
    out, traj = _run_chains(net, cfg, scfg, 1, stream, scfg.capture_trajectory)
    return float(out[0]), traj


def sample_many(net: GeneratorNet, cfg: DiffusionConfig, scfg: SamplerConfig,
                n: int, stream: RngStream):
    """Generate n values; returns (values, Trajectory | None).

    At most _CHUNK chains run per vectorized block; blocks use split child
    streams, so sample_many(n=1, stream) reproduces sample_one(stream) exactly.
    """
    if n < 1:
        raise ConfigError("n must be >= 1")
    capture = scfg.capture_trajectory
    if n <= _CHUNK:
        return _run_chains(net, cfg, scfg, n, stream, capture)
    outs, trajs = [], []
    for k, start in enumerate(range(0, n, _CHUNK)):
        m = min(_CHUNK, n - start)
        out, traj = _run_chains(net, cfg, scfg, m, stream.split(k), capture)
        outs.append(out)
        if capture:
            trajs.append(traj)
    values = np.concatenate(outs)
    if not capture:
        return values, None
    return values, Trajectory(trajs[0].times,
                              np.vstack([t.z_viz for t in trajs]),
                              np.vstack([t.x_hat for t in trajs]))
