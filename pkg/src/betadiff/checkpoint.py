"""Self-describing text checkpoints.

One UTF-8 document: a versioned header with scalar fields and the RNG state
(JSON, one line), the config echo, then named arrays written row-per-line with
17-significant-digit formatting so every float64 round-trips exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .net import AdamState, GeneratorNet, init_adam
from .rng import RngStream

__all__ = ["Checkpoint", "save_checkpoint", "load_checkpoint"]

FORMAT_HEADER = "betadiff-checkpoint v1"

_NET_ARRAYS = ("w1", "b1", "w2", "b2", "w3", "b3")


@dataclass
class Checkpoint:
    net: GeneratorNet
    adam: AdamState
    rng_state: dict
    iteration: int
    config_echo: str


def _encode_rng(state: dict) -> str:
    def default(obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.integer):
            return int(obj)
        raise TypeError(type(obj))

    return json.dumps(state, default=default, sort_keys=True)


def _write_array(fh, name: str, arr: np.ndarray) -> None:
    a = np.atleast_2d(np.asarray(arr, dtype=float))
    fh.write(f"[array {name} {' '.join(str(d) for d in np.asarray(arr).shape)}]\n")
    for row in a:
        fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def save_checkpoint(path: str, net: GeneratorNet, adam: AdamState,
                    stream: RngStream, iteration: int, config_echo: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(FORMAT_HEADER + "\n")
        fh.write(f"iteration = {iteration}\n")
        fh.write(f"adam.step = {adam.step}\n")
        fh.write(f"adam.lr = {adam.lr!r}\n")
        fh.write(f"adam.beta1 = {adam.beta1!r}\n")
        fh.write(f"adam.beta2 = {adam.beta2!r}\n")
        fh.write(f"adam.eps = {adam.eps!r}\n")
        fh.write(f"rng = {_encode_rng(stream.state())}\n")
        fh.write("[config]\n")
        fh.write(config_echo if config_echo.endswith("\n") else config_echo + "\n")
        for name, arr in net.params().items():
            _write_array(fh, f"net.{name}", arr)
        for name, arr in adam.m.items():
            _write_array(fh, f"adam.m.{name}", arr)
        for name, arr in adam.v.items():
            _write_array(fh, f"adam.v.{name}", arr)
        fh.write("[end]\n")


def load_checkpoint(path: str) -> Checkpoint:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != FORMAT_HEADER:
        raise ConfigError(f"{path}: not a {FORMAT_HEADER!r} document")

    scalars: dict[str, str] = {}
    i = 1
    while i < len(lines) and not lines[i].startswith("["):
        key, _, raw = lines[i].partition(" = ")
        scalars[key] = raw
        i += 1
    if i >= len(lines) or lines[i] != "[config]":
        raise ConfigError(f"{path}: missing [config] section")
    i += 1
    config_lines = []
    while i < len(lines) and not lines[i].startswith("[array "):
        config_lines.append(lines[i])
        i += 1

    arrays: dict[str, np.ndarray] = {}
    while i < len(lines) and lines[i] != "[end]":
        header = lines[i]
        if not header.startswith("[array "):
            raise ConfigError(f"{path}: expected array header, got {header!r}")
        parts = header[1:-1].split()
        name, shape = parts[1], tuple(int(d) for d in parts[2:])
        rows = shape[0] if len(shape) > 1 else 1
        i += 1
        block = [np.array([float(v) for v in lines[i + r].split()]) for r in range(rows)]
        arrays[name] = np.vstack(block).reshape(shape)
        i += rows
    if i >= len(lines) or lines[i] != "[end]":
        raise ConfigError(f"{path}: missing [end] marker")

    config_echo = "\n".join(config_lines) + "\n"
    cfg_map = dict(line.split(" = ", 1) for line in config_lines if " = " in line)
    net = GeneratorNet(*(arrays[f"net.{n}"] for n in _NET_ARRAYS),
                       embed_dim=int(cfg_map.get("net.embed_dim", 20)),
                       time_scale=float(cfg_map.get("net.time_scale", 1000.0)),
                       input_mode=cfg_map.get("net.input_mode", "raw"))
    adam = init_adam(net, lr=float(scalars["adam.lr"]))
    adam.step = int(scalars["adam.step"])
    adam.beta1 = float(scalars["adam.beta1"])
    adam.beta2 = float(scalars["adam.beta2"])
    adam.eps = float(scalars["adam.eps"])
    adam.m = {n: arrays[f"adam.m.{n}"] for n in _NET_ARRAYS}
    adam.v = {n: arrays[f"adam.v.{n}"] for n in _NET_ARRAYS}
    rng_state = json.loads(scalars["rng"])
    return Checkpoint(net=net, adam=adam, rng_state=rng_state,
                      iteration=int(scalars["iteration"]), config_echo=config_echo)
