"""The generator network f(z, t) and its optimizer, implemented on bare numpy.

Architecture: [z_input, time_embed(t)] -> Linear(21, 256) -> ReLU ->
Linear(256, 256) -> ReLU -> Linear(256, 1) -> sigmoid, so the raw output lies
in (0, 1); the caller maps it to (shift, shift + scale). The time embedding is
20-dimensional sinusoidal with positions 1000 * t and the standard 10000^(-i/10)
frequency ladder.

Also provides the logit-input preconditioning statistics (mean/std of
logit(z_t) under x0 ~ Unif[x_min, x_max]) used when the network consumes
standardized logits instead of raw z.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, NumericAbort
from .rng import RngStream
from .specfn import digamma, ln_gamma, trigamma

__all__ = [
    "GeneratorNet", "AdamState", "PrecondStats", "Gradients",
    "init_net", "time_embed", "forward", "forward_cached", "backward",
    "init_adam", "adam_step", "precond_stats",
]

INPUT_MODES = ("raw", "precond_logit")


@dataclass
class GeneratorNet:
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    w3: np.ndarray
    b3: np.ndarray
    embed_dim: int = 20
    time_scale: float = 1000.0
    input_mode: str = "raw"

    def params(self) -> dict[str, np.ndarray]:
        return {"w1": self.w1, "b1": self.b1, "w2": self.w2, "b2": self.b2,
                "w3": self.w3, "b3": self.b3}

    def copy(self) -> "GeneratorNet":
        return GeneratorNet(*(v.copy() for v in (self.w1, self.b1, self.w2,
                                                 self.b2, self.w3, self.b3)),
                            embed_dim=self.embed_dim, time_scale=self.time_scale,
                            input_mode=self.input_mode)


@dataclass
class Gradients:
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    w3: np.ndarray
    b3: np.ndarray

    def as_dict(self) -> dict[str, np.ndarray]:
        return {"w1": self.w1, "b1": self.b1, "w2": self.w2, "b2": self.b2,
                "w3": self.w3, "b3": self.b3}


def init_net(stream: RngStream, hidden: int = 256, embed_dim: int = 20,
             time_scale: float = 1000.0, input_mode: str = "raw") -> GeneratorNet:
    """Kaiming-uniform fan-in weights, zero biases (final-layer bias included)."""
    if embed_dim % 2 != 0:
        raise ConfigError("embed_dim must be even (sin/cos pairs)")
    if input_mode not in INPUT_MODES:
        raise ConfigError(f"input_mode must be one of {INPUT_MODES}")
    in_dim = 1 + embed_dim

    def kaiming(fan_in, fan_out):
        limit = np.sqrt(6.0 / fan_in)
        return stream.uniform(-limit, limit, size=(fan_in, fan_out))

    return GeneratorNet(
        w1=kaiming(in_dim, hidden), b1=np.zeros(hidden),
        w2=kaiming(hidden, hidden), b2=np.zeros(hidden),
        w3=kaiming(hidden, 1), b3=np.zeros(1),
        embed_dim=embed_dim, time_scale=time_scale, input_mode=input_mode,
    )


def time_embed(t, embed_dim: int = 20, time_scale: float = 1000.0) -> np.ndarray:
    """Sinusoidal embedding of position time_scale * t; shape (..., embed_dim).

    First half sin, second half cos, frequencies 10000^(-2i/embed_dim).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) or np.any(t > 1.0):
        raise DomainError("time must lie in [0, 1]")
    half = embed_dim // 2
    freqs = 10000.0 ** (-2.0 * np.arange(half) / embed_dim)
    ang = (time_scale * t)[..., None] * freqs
    return np.concatenate([np.sin(ang), np.cos(ang)], axis=-1)


def _assemble_input(net: GeneratorNet, z_input, t) -> np.ndarray:
    z = np.atleast_1d(np.asarray(z_input, dtype=float))
    tv = np.atleast_1d(np.asarray(t, dtype=float))
    if z.shape != tv.shape:
        raise ConfigError("z_input and t must have matching shapes")
    emb = time_embed(tv, net.embed_dim, net.time_scale)
    return np.concatenate([z[:, None], emb], axis=1)


def forward_cached(net: GeneratorNet, z_input, t):
    """Batched forward pass returning (raw outputs in (0,1), activation cache)."""
    x = _assemble_input(net, z_input, t)
    h1 = x @ net.w1 + net.b1
    a1 = np.maximum(h1, 0.0)
    h2 = a1 @ net.w2 + net.b2
    a2 = np.maximum(h2, 0.0)
    h3 = (a2 @ net.w3 + net.b3)[:, 0]
    out = 1.0 / (1.0 + np.exp(-h3))
    if not np.all(np.isfinite(out)):
        raise NumericAbort("non-finite activation in generator forward pass")
    return out, (x, h1, a1, h2, a2, out)


def forward(net: GeneratorNet, z_input, t):
    """Raw generator output in (0, 1); scalar in -> scalar out."""
    out, _ = forward_cached(net, z_input, t)
    return float(out[0]) if np.ndim(z_input) == 0 else out


def backward(net: GeneratorNet, cache, grad_out) -> Gradients:
    """Exact reverse-mode gradients given d(loss)/d(raw output) per sample.

    grad_out is summed into the parameter gradients (pass upstream / B for a
    batch-mean loss).
    """
    x, h1, a1, h2, a2, out = cache
    g = np.asarray(grad_out, dtype=float)
    if g.shape != out.shape:
        raise ConfigError("upstream gradient shape must match batch")
    d3 = (g * out * (1.0 - out))[:, None]           # through sigmoid
    gw3 = a2.T @ d3
    gb3 = d3.sum(axis=0)
    d2 = (d3 @ net.w3.T) * (h2 > 0.0)
    gw2 = a1.T @ d2
    gb2 = d2.sum(axis=0)
    d1 = (d2 @ net.w2.T) * (h1 > 0.0)
    gw1 = x.T @ d1
    gb1 = d1.sum(axis=0)
    return Gradients(gw1, gb1, gw2, gb2, gw3, gb3)


@dataclass
class AdamState:
    m: dict[str, np.ndarray]
    v: dict[str, np.ndarray]
    step: int
    lr: float
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8


def init_adam(net: GeneratorNet, lr: float) -> AdamState:
    zeros = {k: np.zeros_like(p) for k, p in net.params().items()}
    return AdamState(m=zeros, v={k: z.copy() for k, z in zeros.items()},
                     step=0, lr=lr)


def adam_step(net: GeneratorNet, state: AdamState, grads: Gradients) -> GeneratorNet:
    """Standard bias-corrected Adam update, in place; returns the net."""
    gd = grads.as_dict()
    if any(not np.all(np.isfinite(g)) for g in gd.values()):
        raise NumericAbort("non-finite gradient passed to adam_step")
    state.step += 1
    b1c = 1.0 - state.beta1 ** state.step
    b2c = 1.0 - state.beta2 ** state.step
    for k, p in net.params().items():
        g = gd[k]
        state.m[k] = state.beta1 * state.m[k] + (1.0 - state.beta1) * g
        state.v[k] = state.beta2 * state.v[k] + (1.0 - state.beta2) * g * g
        p -= state.lr * (state.m[k] / b1c) / (np.sqrt(state.v[k] / b2c) + state.eps)
    return net


@dataclass(frozen=True)
class PrecondStats:
    """Mean and standard deviation of logit(z_t) under x0 ~ Unif[x_min, x_max]."""

    mean_logit: float
    std_logit: float


def precond_stats(eta: float, alpha_t: float, x_min: float, x_max: float) -> PrecondStats:
    """Closed-form E[logit(z_t)] and std[logit(z_t)] for uniform x0.

    E[psi(eta*alpha*x0)] integrates d(ln Gamma) exactly; the variance adds the
    expected trigamma terms plus the variance of psi over x0, the latter
    approximated by a 101-point endpoint-halved sum and floored at 0. When the
    gamma-argument width is negligible the pointwise (degenerate-interval)
    limit is used instead.
    """
    if not (0.0 < x_min < x_max < 1.0):
        raise DomainError("need 0 < x_min < x_max < 1")
    if eta <= 0.0 or not (0.0 < alpha_t <= 1.0) or alpha_t * x_max >= 1.0:
        raise DomainError("need eta > 0, alpha_t in (0, 1], alpha_t * x_max < 1")
    c = eta * alpha_t
    width = c * (x_max - x_min)
    if width < 1e-6:
        mean = digamma(c * x_min) - digamma(eta * (1.0 - alpha_t * x_min))
        var = trigamma(c * x_min) + trigamma(eta * (1.0 - alpha_t * x_min))
        return PrecondStats(float(mean), float(np.sqrt(var)))

    e_psi_u = (ln_gamma(c * x_max) - ln_gamma(c * x_min)) / width
    e_psi_v = (ln_gamma(eta * (1.0 - alpha_t * x_min))
               - ln_gamma(eta * (1.0 - alpha_t * x_max))) / width
    mean = e_psi_u - e_psi_v

    e_tri_u = (digamma(c * x_max) - digamma(c * x_min)) / width
    e_tri_v = (digamma(eta * (1.0 - alpha_t * x_min))
               - digamma(eta * (1.0 - alpha_t * x_max))) / width

    xs = x_min + (np.arange(101) / 100.0) * (x_max - x_min)
    w = np.ones(101)
    w[0] = w[100] = 0.5
    var_psi_u = max(np.sum(w * digamma(c * xs) ** 2) / 100.0 - e_psi_u ** 2, 0.0)
    var_psi_v = max(np.sum(w * digamma(eta * (1.0 - alpha_t * xs)) ** 2) / 100.0
                    - e_psi_v ** 2, 0.0)

    var = e_tri_u + e_tri_v + var_psi_u + var_psi_v
    return PrecondStats(float(mean), float(np.sqrt(var)))


def generator_input(net: GeneratorNet, cfg, logit_z, t):
    """Network input for a latent held in logit space.

    raw mode feeds z itself; precond_logit standardizes logit(z_t) by the
    closed-form mean/std under x0 ~ Unif[shift, shift + scale] at time t (the
    image-style preconditioning; requires shift > 0).
    """
    from .chain import sigmoid  # chain imports net nothing; no cycle
    from .schedule import alpha

    if net.input_mode == "raw":
        return sigmoid(logit_z)
    if cfg.shift <= 0.0:
        raise ConfigError("precond_logit input mode requires shift > 0")
    lz = np.atleast_1d(np.asarray(logit_z, dtype=float))
    tv = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty_like(lz)
    for i, (l, ti) in enumerate(zip(lz, np.broadcast_to(tv, lz.shape))):
        st = precond_stats(cfg.eta, alpha(cfg.schedule, float(ti)),
                           cfg.shift, cfg.shift + cfg.scale)
        out[i] = (l - st.mean_logit) / st.std_logit
    return float(out[0]) if np.ndim(logit_z) == 0 else out
