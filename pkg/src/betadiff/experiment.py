"""Experiment orchestration: full training runs with periodic evaluation,
cross-run comparison tables/plots, and the forward-corruption visualization.

A run directory contains: config.txt (canonical echo), losses.csv,
metrics.csv, pmf.csv, samples.txt, summary.txt, checkpoint.txt.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .chain import forward_marginal_params, viz_transform
from .checkpoint import save_checkpoint
from .config import ExperimentConfig
from .data import Dataset, dataset
from .errors import ArgumentError, ConfigError
from .gauss import gauss_sample
from .metrics import (Pmf100, clamp_unit, discrete_reference_vector, hellinger,
                      jsd, pmf_100, wasserstein1)
from .net import init_adam, init_net
from .rng import RngStream, sample_beta_logit
from .sampler import sample_many
from .svgplot import svg_line_plot
from .trainer import RunRecord, TrainState, train_loop

__all__ = ["run_experiment", "compare", "forward_viz", "evaluate_samples",
           "truth_pmf", "generate_samples"]

METRIC_NAMES = ("w1", "jsd", "hellinger")

# stream namespace ids carved out of the experiment seed
_NET_INIT, _TRAIN, _EVAL, _TRUTH, _VIZ = 0, 1, 2, 3, 4


def truth_pmf(data: Dataset, stream: RngStream, n: int) -> Pmf100:
    """Reference PMF: exact atom masses for discrete data, empirical otherwise."""
    if data.atoms is not None:
        masses = np.zeros(100)
        for atom in data.atoms:
            masses[min(int(atom * 100), 99)] += 1.0 / len(data.atoms)
        return Pmf100(masses)
    truth, _ = clamp_unit(data.sample(stream, n))
    return pmf_100(truth)


def evaluate_samples(generated: np.ndarray, data: Dataset,
                     truth_stream: RngStream) -> tuple[float, float, float, int, Pmf100, Pmf100]:
    """(w1, jsd, hellinger, clamped_count, generated pmf, truth pmf).

    Discrete truth uses the equal-copies Wasserstein construction over 10k
    generated values; continuous truth pairs equal counts of sorted samples.
    """
    clamped, n_clamped = clamp_unit(generated)
    p_gen = pmf_100(clamped)
    p_true = truth_pmf(data, truth_stream.split(0), len(generated))
    if data.atoms is not None:
        m = min(len(clamped), 10000)
        m -= m % len(data.atoms)
        if m == 0:
            raise ArgumentError("need at least one sample per atom for W1")
        gen_sorted = np.sort(clamped[:m])
        ref = discrete_reference_vector(data.atoms, m)
        w1 = wasserstein1(gen_sorted, ref)
    else:
        truth = np.sort(data.sample(truth_stream.split(1), len(clamped)))
        w1 = wasserstein1(np.sort(clamped), truth)
    return w1, jsd(p_gen, p_true), hellinger(p_gen, p_true), n_clamped, p_gen, p_true


def generate_samples(expcfg: ExperimentConfig, net, data: Dataset, n: int,
                     stream: RngStream) -> np.ndarray:
    """n generated values in raw data space, via the configured model."""
    if expcfg.model == "beta":
        scfg = expcfg.sampler(x0_mean=data.mean)
        values, _ = sample_many(net, expcfg.diffusion(), scfg, n, stream)
        return values
    return gauss_sample(net, expcfg.schedule(), expcfg.values["sampler.nfe"],
                        stream, n)


def run_experiment(expcfg: ExperimentConfig, out_dir: str, progress=None) -> str:
    """Train per the config, evaluating on schedule; writes all artifacts."""
    os.makedirs(out_dir, exist_ok=True)
    tcfg = expcfg.train()
    dcfg = expcfg.diffusion()
    data = dataset(expcfg.values["data.kind"], expcfg.values["data.file"] or None)

    root = RngStream(expcfg.seed)
    net = init_net(root.split(_NET_INIT), hidden=expcfg.values["net.hidden"],
                   embed_dim=expcfg.values["net.embed_dim"],
                   time_scale=expcfg.values["net.time_scale"],
                   input_mode=expcfg.values["net.input_mode"])
    adam = init_adam(net, tcfg.lr)
    state = TrainState(net=net, adam=adam, stream=root.split(_TRAIN))

    records: list[RunRecord] = []
    final_samples: dict[str, np.ndarray] = {}

    def on_eval(iteration: int) -> None:
        final = iteration >= tcfg.iterations
        n = expcfg.values["train.final_eval_samples"] if final else tcfg.eval_samples
        gen = generate_samples(expcfg, state.net, data, n,
                               root.split(_EVAL, iteration))
        w1, j, h, clamped, p_gen, p_true = evaluate_samples(
            gen, data, root.split(_TRUTH, iteration))
        records.append(RunRecord(iteration, w1, j, h, clamped))
        if progress is not None:
            progress(f"eval iter={iteration} n={n} w1={w1:.5f} jsd={j:.5f} "
                     f"hellinger={h:.5f} clamped={clamped}")
        if final:
            final_samples["samples"] = gen
            final_samples["pmf_gen"] = p_gen.masses
            final_samples["pmf_true"] = p_true.masses

    train_loop(state, dcfg, tcfg, data, tcfg.iterations,
               progress=progress, on_eval=on_eval)

    echo = expcfg.echo()
    with open(os.path.join(out_dir, "config.txt"), "w", encoding="utf-8") as fh:
        fh.write(echo)
    with open(os.path.join(out_dir, "losses.csv"), "w", encoding="utf-8") as fh:
        fh.write("iteration,loss,klub_cond,klub_marg\n")
        for p in state.trace:
            fh.write(f"{p.iteration},{p.loss!r},{p.klub_cond!r},{p.klub_marg!r}\n")
    with open(os.path.join(out_dir, "metrics.csv"), "w", encoding="utf-8") as fh:
        fh.write("iteration,model,w1,jsd,hellinger,clamped_count\n")
        for r in records:
            fh.write(f"{r.iteration},{expcfg.model},{r.w1!r},{r.jsd!r},"
                     f"{r.hellinger!r},{r.clamped}\n")
    with open(os.path.join(out_dir, "pmf.csv"), "w", encoding="utf-8") as fh:
        fh.write("bin,bin_center,truth_mass,generated_mass\n")
        for i in range(100):
            fh.write(f"{i},{(i + 0.5) / 100!r},{final_samples['pmf_true'][i]!r},"
                     f"{final_samples['pmf_gen'][i]!r}\n")
    np.savetxt(os.path.join(out_dir, "samples.txt"),
               final_samples["samples"], fmt="%.17g")
    last = records[-1]
    with open(os.path.join(out_dir, "summary.txt"), "w", encoding="utf-8") as fh:
        fh.write(f"model = {expcfg.model}\n"
                 f"loss.variant = {expcfg.values['loss.variant']}\n"
                 f"iterations = {last.iteration}\n"
                 f"final_w1 = {last.w1!r}\n"
                 f"final_jsd = {last.jsd!r}\n"
                 f"final_hellinger = {last.hellinger!r}\n"
                 f"final_clamped_count = {last.clamped}\n")
    save_checkpoint(os.path.join(out_dir, "checkpoint.txt"), state.net,
                    state.adam, state.stream, state.iteration, echo)
    return out_dir


def _read_metrics(run_dir: str) -> dict:
    path = os.path.join(run_dir, "metrics.csv")
    rows = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        for line in fh:
            rows.append(line.strip().split(","))
    if header[:2] != ["iteration", "model"]:
        raise ConfigError(f"{path}: unexpected metrics header {header}")
    return {
        "label": os.path.basename(os.path.normpath(run_dir)),
        "iterations": np.array([int(r[0]) for r in rows]),
        "w1": np.array([float(r[2]) for r in rows]),
        "jsd": np.array([float(r[3]) for r in rows]),
        "hellinger": np.array([float(r[4]) for r in rows]),
    }


def compare(run_dirs: list[str], out_dir: str) -> str:
    """Aligned-by-iteration metric table plus one SVG line plot per metric."""
    if len(run_dirs) < 2:
        raise ArgumentError("compare needs at least 2 run directories")
    runs = [_read_metrics(d) for d in run_dirs]
    base = runs[0]["iterations"]
    for run in runs[1:]:
        if not np.array_equal(run["iterations"], base):
            raise ArgumentError(
                "eval iteration grids differ: "
                f"{runs[0]['label']} has {base.tolist()}, "
                f"{run['label']} has {run['iterations'].tolist()}")
    os.makedirs(out_dir, exist_ok=True)
    table = os.path.join(out_dir, "comparison.csv")
    with open(table, "w", encoding="utf-8") as fh:
        cols = ["iteration"] + [f"{r['label']}.{m}" for r in runs for m in METRIC_NAMES]
        fh.write(",".join(cols) + "\n")
        for i, it in enumerate(base):
            vals = [str(it)] + [repr(float(r[m][i])) for r in runs for m in METRIC_NAMES]
            fh.write(",".join(vals) + "\n")
    for m in METRIC_NAMES:
        svg_line_plot(os.path.join(out_dir, f"{m}.svg"),
                      [(r["label"], base, r[m]) for r in runs],
                      title=f"{m} vs iteration", xlabel="iteration", ylabel=m)
    return out_dir


def forward_viz(expcfg: ExperimentConfig, x0_values, times, out_path: str) -> str:
    """One forward draw per (x0, t), rescaled for display; CSV x0,t,z_viz."""
    dcfg = expcfg.diffusion()
    stream = RngStream(expcfg.seed, key=(_VIZ,))
    x0_values = np.asarray(x0_values, dtype=float)
    times = np.asarray(times, dtype=float)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("x0,t,z_viz\n")
        for x_raw in x0_values:
            x0 = x_raw * dcfg.scale + dcfg.shift
            for t in times:
                logit_z = sample_beta_logit(
                    stream, forward_marginal_params(dcfg, x0, float(t)))
                z_viz = viz_transform(dcfg, logit_z, float(t))
                fh.write(f"{x_raw!r},{float(t)!r},{z_viz!r}\n")
    return out_path
