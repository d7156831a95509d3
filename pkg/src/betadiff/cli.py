"""Command-line workbench: train / sample / eval / compare / forward-viz / preset.

Exit codes: 0 success, 2 configuration error, 3 numeric abort. BETADIFF_THREADS
caps the BLAS worker count (applied before numpy loads, so heavy imports stay
inside the handlers).
"""

from __future__ import annotations

import argparse
import os
import sys


def _apply_thread_cap() -> None:
    cap = os.environ.get("BETADIFF_THREADS")
    if not cap:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
                "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(var, cap)


def _load_expcfg(args):
    from .config import ExperimentConfig, parse_file, preset

    if getattr(args, "preset", None):
        expcfg = preset(args.preset)
    elif getattr(args, "config", None):
        expcfg = ExperimentConfig(parse_file(args.config))
    else:
        from .errors import ConfigError

        raise ConfigError("provide --preset NAME or --config PATH")
    if getattr(args, "seed", None) is not None:
        values = dict(expcfg.values)
        values["seed"] = args.seed
        expcfg = ExperimentConfig(values)
    return expcfg


def _cmd_train(args) -> int:
    from .experiment import run_experiment

    expcfg = _load_expcfg(args)
    out_dir = args.out or f"run_{args.preset or 'config'}_seed{expcfg.seed}"
    log_path = os.path.join(out_dir, "train.log")
    os.makedirs(out_dir, exist_ok=True)
    with open(log_path, "a", encoding="utf-8") as log:
        def progress(line: str) -> None:
            print(line)
            log.write(line + "\n")
            log.flush()

        run_experiment(expcfg, out_dir, progress=progress)
    print(f"artifacts written to {out_dir}")
    return 0


def _cmd_sample(args) -> int:
    import numpy as np

    from .checkpoint import load_checkpoint
    from .config import ExperimentConfig, parse_config
    from .data import dataset
    from .rng import RngStream
    from .sampler import sample_many

    ckpt = load_checkpoint(args.checkpoint)
    expcfg = ExperimentConfig(parse_config(ckpt.config_echo))
    data = dataset(expcfg.values["data.kind"], expcfg.values["data.file"] or None)
    seed = args.seed if args.seed is not None else expcfg.seed
    scfg = expcfg.sampler(x0_mean=data.mean, nfe=args.nfe,
                          capture_trajectory=args.trajectory is not None)
    stream = RngStream(seed, key=(100,))
    values, traj = sample_many(ckpt.net, expcfg.diffusion(), scfg, args.n, stream)
    out = args.out or "samples.txt"
    np.savetxt(out, values, fmt="%.17g")
    print(f"wrote {args.n} samples to {out}")
    if args.trajectory:
        with open(args.trajectory, "w", encoding="utf-8") as fh:
            fh.write("chain,j,t,z_viz,x_hat\n")
            J = scfg.nfe
            for chain in range(traj.z_viz.shape[0]):
                for k, t in enumerate(traj.times):
                    fh.write(f"{chain},{J - k},{float(t)!r},"
                             f"{traj.z_viz[chain, k]!r},{traj.x_hat[chain, k]!r}\n")
        print(f"wrote trajectories to {args.trajectory}")
    return 0


def _cmd_eval(args) -> int:
    import numpy as np

    from .data import dataset
    from .experiment import evaluate_samples
    from .rng import RngStream

    expcfg = _load_expcfg(args)
    samples = np.loadtxt(args.samples, ndmin=1)
    data = dataset(expcfg.values["data.kind"], expcfg.values["data.file"] or None)
    w1, j, h, clamped, _, _ = evaluate_samples(samples, data,
                                               RngStream(expcfg.seed, key=(101,)))
    line = f"0,{expcfg.model},{w1!r},{j!r},{h!r},{clamped}"
    print("iteration,model,w1,jsd,hellinger,clamped_count")
    print(line)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("iteration,model,w1,jsd,hellinger,clamped_count\n" + line + "\n")
    return 0


def _cmd_compare(args) -> int:
    from .experiment import compare

    out = compare(args.run_dirs, args.out)
    print(f"comparison written to {out}")
    return 0


def _cmd_forward_viz(args) -> int:
    import numpy as np

    from .experiment import forward_viz

    expcfg = _load_expcfg(args)
    x0_values = [float(v) for v in args.x0.split(",")]
    times = np.linspace(0.0, 1.0, args.times)
    out = forward_viz(expcfg, x0_values, times, args.out)
    print(f"forward visualization written to {out}")
    return 0


def _cmd_preset(args) -> int:
    from .config import preset, preset_names

    if args.list:
        for name in preset_names():
            print(name)
        return 0
    if args.show:
        print(preset(args.show).echo(), end="")
        return 0
    print("use --list or --show NAME", file=sys.stderr)
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="betadiff",
                                     description="beta diffusion workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cfg(p):
        p.add_argument("--preset", help="preset name (see `preset --list`)")
        p.add_argument("--config", help="path to a key = value config file")
        p.add_argument("--seed", type=int, help="override the config seed")

    p = sub.add_parser("train", help="run a training experiment")
    add_cfg(p)
    p.add_argument("--out", help="artifact directory")
    p.set_defaults(fn=_cmd_train)

    p = sub.add_parser("sample", help="generate from a checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nfe", type=int, default=200)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--trajectory", help="CSV path for per-chain trajectories")
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("eval", help="metrics for a samples file")
    add_cfg(p)
    p.add_argument("--samples", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("compare", help="align and plot metrics across runs")
    p.add_argument("run_dirs", nargs="+")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("forward-viz", help="forward-corruption visualization CSV")
    add_cfg(p)
    p.add_argument("--x0", default="0.2,0.5,0.8", help="comma-separated raw values")
    p.add_argument("--times", type=int, default=21)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_forward_viz)

    p = sub.add_parser("preset", help="list or show presets")
    p.add_argument("--list", action="store_true")
    p.add_argument("--show")
    p.set_defaults(fn=_cmd_preset)

    return parser


def main(argv=None) -> int:
    _apply_thread_cap()
    args = build_parser().parse_args(argv)
    from .errors import ConfigError, DataError, NumericAbort

    try:
        return args.fn(args)
    except (ConfigError, DataError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericAbort as exc:
        print(f"numeric abort: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
