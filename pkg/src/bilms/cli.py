"""Command-line front end: ``bilms {verify,run,sweep,demo}``.

Exit codes: 0 success, 1 verification failure, 2 bad flags, 3 invalid config.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .gradients import FDConfig
from .harness import ConfigError, ExperimentConfig, compare_trajectories, mu_sweep, run_experiment, write_atomic
from .lms import Algorithm

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_FLAGS = 2
EXIT_BAD_CONFIG = 3

_CONFIG_KEYS = {
    "algorithm": "algorithm",
    "taps": "taps",
    "mu": "mu",
    "steps": "steps",
    "seed": "seed",
    "noise_std": "noise_std",
    "target": "target",
    "input": "input_dist",
    "init": "init",
}


def load_config(path) -> ExperimentConfig:
    """Parse a JSON experiment config.

    Recognized keys: ``algorithm``, ``taps``, ``mu``, ``steps``, ``seed``,
    ``noise_std``, ``target`` (``"random"`` or ``[[x1, x2, x3, x4], ...]``),
    ``input`` (``"gaussian"``) and ``init`` (``"zero"`` or ``"target"``).
    Missing keys take the :class:`ExperimentConfig` defaults; unknown keys
    are rejected.

    Raises:
        ConfigError: on unreadable files, malformed JSON or invalid fields.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(raw) - set(_CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    return ExperimentConfig(**{_CONFIG_KEYS[k]: v for k, v in raw.items()})


def _mu_grid(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid --mu-grid {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("--mu-grid needs at least one value")
    return values


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid --seed {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("--seed must be an unsigned 64-bit integer")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_BAD_FLAGS, f"{self.prog}: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bilms", description="Bicomplex LMS toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("verify", help="run the algebra, gradient and equivalence suites")

    run = sub.add_parser("run", help="run one experiment and write its learning curve")
    run.add_argument("--config", required=True)
    run.add_argument("--out", required=True)
    run.add_argument("--seed", type=_seed)

    sweep = sub.add_parser("sweep", help="run one experiment per step size")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--out", required=True, help="output directory")
    sweep.add_argument("--mu-grid", required=True, type=_mu_grid)
    sweep.add_argument("--seed", type=_seed)

    demo = sub.add_parser("demo", help="BLMS1 vs CLMS on a canned problem (seed 42)")
    demo.add_argument("--out", help="optional directory for the two curves")
    return parser


def _err(msg: str) -> None:
    print(f"bilms: {msg}", file=sys.stderr)


def _fd_config() -> FDConfig:
    h = os.environ.get("BILMS_FD_H")
    if h is None:
        return FDConfig()
    try:
        return FDConfig(h=float(h))
    except ValueError as exc:
        raise ConfigError(f"BILMS_FD_H: {exc}") from None


def _cmd_verify(args) -> int:
    from .verify import format_table, run_all

    cfg = _fd_config()
    checks = run_all(cfg)
    print(format_table(checks, cfg))
    failed = [c for c in checks if not c.passed]
    if failed:
        _err(f"verification failed: {len(failed)} check(s), first: {failed[0].name}")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    return cfg


def _cmd_run(args) -> int:
    cfg = _load(args)
    curve = run_experiment(cfg)
    curve.write(args.out)
    sq, werr = curve.final
    status = "diverged" if curve.diverged else "ok"
    print(f"{cfg.algorithm.value}: {len(curve.rows)} rows, final sq_error={sq:.6g}, "
          f"weight_err_sq={werr:.6g} ({status}) -> {args.out}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = _load(args)
    if any(not mu > 0 for mu in args.mu_grid):
        raise ConfigError("mu-grid values must be > 0")
    out = Path(args.out)
    results = mu_sweep(cfg, args.mu_grid)
    summary = ["mu,final_sq_error,final_weight_err_sq,diverged"]
    for r in results:
        r.curve.write(out / f"curve_mu_{r.mu:g}.csv")
        summary.append(f"{r.mu:.17g},{r.final_sq_error:.17g},{r.final_weight_err_sq:.17g},{int(r.diverged)}")
        print(f"mu={r.mu:g}: final sq_error={r.final_sq_error:.6g}, "
              f"weight_err_sq={r.final_weight_err_sq:.6g}{' (diverged)' if r.diverged else ''}")
    write_atomic(out / "summary.csv", "\n".join(summary) + "\n")
    return EXIT_OK


def _cmd_demo(args) -> int:
    base = ExperimentConfig(taps=4, mu=0.05, steps=2000, seed=42, noise_std=0.0)
    print("noiseless system identification, n = 4, mu = 0.05, 2000 steps, seed 42")
    for algo in (Algorithm.BLMS1, Algorithm.CLMS):
        curve = run_experiment(replace(base, algorithm=algo))
        werr = curve.column("weight_err_sq")
        print(f"  {algo.value:6s} weight_err_sq: start {werr[0]:.4g}, step 500 {werr[500]:.4g}, "
              f"final {werr[-1]:.4g}")
        if args.out:
            curve.write(Path(args.out) / f"demo_{algo.value}.csv")
    dev = compare_trajectories(base, Algorithm.BLMS1, Algorithm.CLMS, mu_b=2 * base.mu)
    print(f"  BLMS1(mu) vs CLMS(2 mu) on C(i) data: max weight deviation {dev:.3g}")
    return EXIT_OK


_COMMANDS = {"verify": _cmd_verify, "run": _cmd_run, "sweep": _cmd_sweep, "demo": _cmd_demo}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        _err(str(exc))
        return EXIT_BAD_CONFIG
    except OSError as exc:
        _err(f"{exc.__class__.__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
