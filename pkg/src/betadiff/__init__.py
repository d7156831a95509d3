"""Beta diffusion: multiplicative diffusion generative modeling of
range-bounded data, trained with KL-divergence upper bounds.

Subpackage map: specfn (special functions), rng (seeded variate generation),
schedule (alpha schedules), chain (diffusion kernels), loss (KLUB / negative
ELBO objectives), net (generator MLP + Adam), gauss (Gaussian baseline), data
(synthetic datasets), metrics (W1 / JSD / Hellinger), trainer, sampler, config,
checkpoint, experiment (orchestration), cli.
"""

from .chain import (DiffusionConfig, LogitSample, forward_conditional_params,
                    forward_marginal_params, reverse_conditional_params,
                    reverse_update_logit, viz_transform)
from .config import ExperimentConfig, parse_config, preset, preset_names
from .data import Dataset, dataset, postprocess, preprocess
from .errors import (ArgumentError, ConfigError, DataError, DomainError,
                     NumericAbort)
from .loss import (LossBreakdown, combined_loss, kl_beta, klub_conditional,
                   klub_marginal, loss_gradient, prior_gap_kl)
from .metrics import Pmf100, hellinger, jsd, pmf_100, wasserstein1
from .net import (AdamState, GeneratorNet, PrecondStats, adam_step, forward,
                  init_adam, init_net, precond_stats, time_embed)
from .rng import BetaParams, RngStream, sample_beta_logit, sample_log_gamma
from .sampler import SamplerConfig, sample_many, sample_one
from .schedule import Schedule, alpha, beta_linear, sampling_grid, sigmoid_schedule, snr
from .specfn import digamma, ln_beta, ln_gamma, trigamma
from .trainer import TrainConfig, train_step

__version__ = "0.1.0"

__all__ = [
    "DiffusionConfig", "LogitSample", "forward_conditional_params",
    "forward_marginal_params", "reverse_conditional_params",
    "reverse_update_logit", "viz_transform",
    "ExperimentConfig", "parse_config", "preset", "preset_names",
    "Dataset", "dataset", "postprocess", "preprocess",
    "ArgumentError", "ConfigError", "DataError", "DomainError", "NumericAbort",
    "LossBreakdown", "combined_loss", "kl_beta", "klub_conditional",
    "klub_marginal", "loss_gradient", "prior_gap_kl",
    "Pmf100", "hellinger", "jsd", "pmf_100", "wasserstein1",
    "AdamState", "GeneratorNet", "PrecondStats", "adam_step", "forward",
    "init_adam", "init_net", "precond_stats", "time_embed",
    "BetaParams", "RngStream", "sample_beta_logit", "sample_log_gamma",
    "SamplerConfig", "sample_many", "sample_one",
    "Schedule", "alpha", "beta_linear", "sampling_grid", "sigmoid_schedule", "snr",
    "digamma", "ln_beta", "ln_gamma", "trigamma",
    "TrainConfig", "train_step",
]
