"""Mini-batch training loop for beta diffusion and the Gaussian baseline.

Per sample: t ~ Unif(1e-5, 1), s = pi * t, the data point is mapped through
scale/shift, the latent is drawn from the forward marginal in logit space, the
generator estimates x0, and the closed-form loss and its analytic gradient
w.r.t. the estimate feed one batch-mean Adam step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .chain import DiffusionConfig, forward_marginal_params
from .data import Dataset, preprocess
from .errors import ConfigError, NumericAbort
from .gauss import gauss_elbo_loss, gauss_forward_sample, gauss_loss_gradient
from .loss import LossBreakdown, combined_loss, loss_gradient
from .net import (AdamState, GeneratorNet, adam_step, backward, forward_cached,
                  generator_input)
from .rng import RngStream, sample_beta_logit

__all__ = ["TrainConfig", "RunRecord", "train_step", "train_loop"]

MODELS = ("beta", "gauss")


@dataclass(frozen=True)
class TrainConfig:
    batch_size: int = 1000
    iterations: int = 100000
    lr: float = 5e-4
    eval_every: int = 5000
    eval_samples: int = 100000
    seed: int = 0
    loss_variant: str = "klub"
    model: str = "beta"
    gauss_weighting: str = "snr_t"
    grad_clip: float = 0.0  # 0 disables clipping
    deterministic: bool = True
    log_every: int = 100

    def __post_init__(self):
        if self.batch_size < 1:
            raise ConfigError("batch_size must be >= 1")
        if self.iterations < 1:
            raise ConfigError("iterations must be >= 1")
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}")
        if self.lr <= 0.0:
            raise ConfigError("lr must be > 0")
        if self.eval_every < 1 or self.eval_samples < 1:
            raise ConfigError("eval_every and eval_samples must be >= 1")


@dataclass
class RunRecord:
    """One evaluation checkpoint's metrics."""

    iteration: int
    w1: float
    jsd: float
    hellinger: float
    clamped: int


def _clip(grads, max_norm: float):
    if max_norm <= 0.0:
        return grads
    total = np.sqrt(sum(float(np.sum(g * g)) for g in grads.as_dict().values()))
    if total > max_norm:
        scale = max_norm / total
        for g in grads.as_dict().values():
            g *= scale
    return grads


def train_step(net: GeneratorNet, adam: AdamState, cfg: DiffusionConfig,
               tcfg: TrainConfig, stream: RngStream,
               x_raw: np.ndarray) -> LossBreakdown:
    """One Algorithm-1 step over a raw-data batch; returns batch-mean losses."""
    B = len(x_raw)
    t = stream.uniform(1e-5, 1.0, B)
    x0 = preprocess(x_raw, cfg)

    if tcfg.model == "beta":
        logit_z = sample_beta_logit(stream, forward_marginal_params(cfg, x0, t))
        z_in = generator_input(net, cfg, logit_z, t)
        raw, cache = forward_cached(net, z_in, t)
        x_hat = raw * cfg.scale + cfg.shift
        bd = combined_loss(cfg, x0, x_hat, t, tcfg.loss_variant)
        loss_per_sample = bd.combined
        grad_xhat = loss_gradient(cfg, x0, x_hat, t, tcfg.loss_variant)
        out = LossBreakdown(float(np.mean(bd.klub_cond)),
                            float(np.mean(bd.klub_marg)),
                            float(np.mean(bd.combined)), bd.variant)
    else:
        z = gauss_forward_sample(stream, x0, t, cfg.schedule)
        raw, cache = forward_cached(net, z, t)
        x_hat = raw * cfg.scale + cfg.shift
        s = cfg.pi * t
        loss_per_sample = gauss_elbo_loss(x0, x_hat, s, t, cfg.schedule,
                                          tcfg.gauss_weighting)
        grad_xhat = gauss_loss_gradient(x0, x_hat, s, t, cfg.schedule,
                                        tcfg.gauss_weighting)
        mean = float(np.mean(loss_per_sample))
        out = LossBreakdown(mean, mean, mean, "gauss")

    if not np.all(np.isfinite(loss_per_sample)):
        bad = int(np.flatnonzero(~np.isfinite(np.atleast_1d(loss_per_sample)))[0])
        raise NumericAbort(
            f"non-finite loss for sample {bad}: x0={np.atleast_1d(x0)[bad]!r} "
            f"t={np.atleast_1d(t)[bad]!r}")

    grads = backward(net, cache, np.asarray(grad_xhat) * cfg.scale / B)
    adam_step(net, adam, _clip(grads, tcfg.grad_clip))
    return out


@dataclass
class LossTracePoint:
    iteration: int
    loss: float
    klub_cond: float
    klub_marg: float


@dataclass
class TrainState:
    """Everything train_loop mutates, exposed so checkpoints can resume."""

    net: GeneratorNet
    adam: AdamState
    stream: RngStream
    iteration: int = 0
    trace: list[LossTracePoint] = field(default_factory=list)


def train_loop(state: TrainState, cfg: DiffusionConfig, tcfg: TrainConfig,
               data: Dataset, iterations: int,
               progress=None, on_eval=None) -> TrainState:
    """Run `iterations` training steps from the current state.

    progress(line) is called every tcfg.log_every steps with a formatted
    `iter=... loss=...` line; on_eval(iteration) is called after every
    tcfg.eval_every steps and once more at the end (if not already aligned).
    """
    for _ in range(iterations):
        batch = data.sample(state.stream, tcfg.batch_size)
        try:
            bd = train_step(state.net, state.adam, cfg, tcfg, state.stream, batch)
        except NumericAbort as exc:
            raise NumericAbort(f"iteration {state.iteration + 1}: {exc}") from exc
        state.iteration += 1
        it = state.iteration
        if it % tcfg.log_every == 0 or it == 1:
            state.trace.append(LossTracePoint(it, bd.combined, bd.klub_cond,
                                              bd.klub_marg))
            if progress is not None:
                progress(f"iter={it} loss={bd.combined:.6g} "
                         f"klub_cond={bd.klub_cond:.6g} klub_marg={bd.klub_marg:.6g}")
        if on_eval is not None and it % tcfg.eval_every == 0:
            on_eval(it)
    if on_eval is not None and state.iteration % tcfg.eval_every != 0:
        on_eval(state.iteration)
    return state
