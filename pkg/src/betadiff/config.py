"""Flat `key = value` configuration files, presets, and the experiment bundle.

Grammar: UTF-8 lines of `key = value`; blank lines and `#` comments ignored;
dotted keys namespaced per subsystem. Unknown keys are rejected with their
names. The echo of a parsed config is canonical: parse -> echo -> parse is a
fixed point, and presets are defined by their echoes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import DiffusionConfig
from .errors import ConfigError
from .sampler import SamplerConfig
from .schedule import Schedule
from .trainer import TrainConfig

__all__ = ["ExperimentConfig", "KEYS", "PRESETS", "parse_config", "parse_file",
           "echo_config", "preset", "preset_names"]

# key -> (type tag, default); order defines the canonical echo order
KEYS: dict[str, tuple[str, object]] = {
    "model": ("choice:beta,gauss", "beta"),
    "seed": ("int", 0),
    "data.kind": ("choice:five_point,mixture_e1,file", "five_point"),
    "data.file": ("str", ""),
    "diffusion.eta": ("float", 10000.0),
    "diffusion.scale": ("float", 1.0),
    "diffusion.shift": ("float", 0.0),
    "loss.variant": ("choice:klub,neg_elbo", "klub"),
    "loss.omega": ("float", 0.5),
    "loss.pi": ("float", 0.95),
    "schedule.kind": ("choice:beta_linear,sigmoid,sigmoid_power", "beta_linear"),
    "schedule.beta_d": ("float", 19.9),
    "schedule.beta_min": ("float", 0.1),
    "schedule.c0": ("float", 10.0),
    "schedule.c1": ("float", -13.0),
    "net.hidden": ("int", 256),
    "net.embed_dim": ("int", 20),
    "net.time_scale": ("float", 1000.0),
    "net.input_mode": ("choice:raw,precond_logit", "raw"),
    "train.batch_size": ("int", 1000),
    "train.iterations": ("int", 100000),
    "train.lr": ("float", 5e-4),
    "train.eval_every": ("int", 5000),
    "train.eval_samples": ("int", 100000),
    "train.final_eval_samples": ("int", 100000),
    "train.grad_clip": ("float", 0.0),
    "train.log_every": ("int", 100),
    "train.deterministic": ("bool", True),
    "gauss.weighting": ("choice:snr_t,snr_diff", "snr_t"),
    "sampler.nfe": ("int", 200),
    "sampler.alpha_branch": ("choice:auto,sigmoid,power", "auto"),
    "sampler.return_mode": ("choice:xhat,z_rescaled", "xhat"),
}


def _parse_value(key: str, raw: str):
    tag, _ = KEYS[key]
    raw = raw.strip()
    try:
        if tag == "int":
            return int(raw)
        if tag == "float":
            return float(raw)
        if tag == "bool":
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        if tag.startswith("choice:"):
            options = tag.split(":", 1)[1].split(",")
            if raw not in options:
                raise ValueError(f"expected one of {options}")
            return raw
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from exc


def _format_value(key: str, value) -> str:
    tag, _ = KEYS[key]
    if tag == "bool":
        return "true" if value else "false"
    if tag == "float":
        return repr(float(value))
    return str(value)


def parse_config(text: str, overrides: dict | None = None) -> dict:
    """Parse config text into a full key -> value dict (defaults applied)."""
    values = {k: d for k, (_, d) in KEYS.items()}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, raw)
    for key, val in (overrides or {}).items():
        if key not in KEYS:
            raise ConfigError(f"unknown override key {key!r}")
        values[key] = val if not isinstance(val, str) else _parse_value(key, val)
    return values


def parse_file(path: str, overrides: dict | None = None) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), overrides)


def echo_config(values: dict) -> str:
    """Canonical echo: every key, canonical order and formatting."""
    return "\n".join(f"{k} = {_format_value(k, values[k])}" for k in KEYS) + "\n"


@dataclass(frozen=True)
class ExperimentConfig:
    """Typed view over a full config dict."""

    values: dict

    @property
    def seed(self) -> int:
        return self.values["seed"]

    @property
    def model(self) -> str:
        return self.values["model"]

    def schedule(self) -> Schedule:
        v = self.values
        return Schedule(v["schedule.kind"], beta_d=v["schedule.beta_d"],
                        beta_min=v["schedule.beta_min"], c0=v["schedule.c0"],
                        c1=v["schedule.c1"])

    def diffusion(self) -> DiffusionConfig:
        v = self.values
        return DiffusionConfig(eta=v["diffusion.eta"], scale=v["diffusion.scale"],
                               shift=v["diffusion.shift"], omega=v["loss.omega"],
                               pi=v["loss.pi"], schedule=self.schedule())

    def train(self) -> TrainConfig:
        v = self.values
        return TrainConfig(batch_size=v["train.batch_size"],
                           iterations=v["train.iterations"], lr=v["train.lr"],
                           eval_every=v["train.eval_every"],
                           eval_samples=v["train.eval_samples"],
                           seed=v["seed"], loss_variant=v["loss.variant"],
                           model=v["model"], gauss_weighting=v["gauss.weighting"],
                           grad_clip=v["train.grad_clip"],
                           deterministic=v["train.deterministic"],
                           log_every=v["train.log_every"])

    def sampler(self, x0_mean: float, capture_trajectory: bool = False,
                nfe: int | None = None) -> SamplerConfig:
        v = self.values
        return SamplerConfig(nfe=nfe if nfe is not None else v["sampler.nfe"],
                             return_mode=v["sampler.return_mode"],
                             capture_trajectory=capture_trajectory,
                             alpha_branch=v["sampler.alpha_branch"],
                             x0_mean=x0_mean)

    def echo(self) -> str:
        return echo_config(self.values)


def _preset_dict(**overrides) -> dict:
    values = {k: d for k, (_, d) in KEYS.items()}
    values.update(overrides)
    return values


PRESETS: dict[str, dict] = {
    "five_point_klub": _preset_dict(),
    "five_point_elbo": _preset_dict(**{"loss.variant": "neg_elbo"}),
    "five_point_gauss": _preset_dict(model="gauss"),
    "mixture_e1_klub": _preset_dict(**{"data.kind": "mixture_e1"}),
    "mixture_e1_elbo": _preset_dict(**{"data.kind": "mixture_e1",
                                       "loss.variant": "neg_elbo"}),
    "mixture_e1_gauss": _preset_dict(**{"data.kind": "mixture_e1"}, model="gauss"),
    "ablation_klub_cond": _preset_dict(**{"loss.omega": 1.0}),
    "ablation_klub_marg": _preset_dict(**{"loss.omega": 0.0}),
}


def preset(name: str) -> ExperimentConfig:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")
    return ExperimentConfig(dict(PRESETS[name]))


def preset_names() -> list[str]:
    return sorted(PRESETS)
