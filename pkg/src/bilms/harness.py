"""Seeded system-identification experiments for the LMS variants.

Random draw order, fixed for a given seed:

1. target weights, ``taps x 4`` normals (only when ``target == "random"``);
2. the whole input stream, ``steps x taps x 4`` normals;
3. four normals of additive noise per step, drawn even when
   ``noise_std == 0`` so the input stream never depends on the noise level.

Bicomplex data puts variance 1/4 on each real coordinate, so every tap and
the target have unit expected power and ``E||noise||^2 == noise_std**2``.
When ``CLMS`` takes part, the data are restricted to ``C(i)``: coordinates
``x3, x4`` are dropped and ``x1, x2`` are scaled by ``sqrt(2)``, keeping unit
power.
"""
from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .bicomplex import Bicomplex, BicomplexVector, DimensionError
from .lms import AdaptiveFilter, Algorithm, StepRecord

__all__ = [
    "ConfigError", "ExperimentConfig", "LearningCurve", "SweepResult",
    "DIVERGENCE_THRESHOLD", "make_rng", "gen_input", "synth_desired",
    "draw_target", "run_experiment", "compare_trajectories", "mu_sweep",
    "write_atomic",
]

DIVERGENCE_THRESHOLD = 1e12
CSV_HEADER = ("step", "sq_error", "weight_err_sq")
_COMPLEX_SCALE = math.sqrt(2.0)


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    """One system-identification run.

    ``target`` is ``"random"`` or a sequence of ``taps`` coordinate
    4-tuples ``(x1, x2, x3, x4)``.  ``init`` selects the starting weights:
    ``"zero"`` or ``"target"``.
    """

    algorithm: Algorithm = Algorithm.BLMS1
    taps: int = 4
    mu: float = 0.05
    steps: int = 2000
    seed: int = 42
    noise_std: float = 0.0
    target: str | tuple = "random"
    input_dist: str = "gaussian"
    init: str = "zero"

    def __post_init__(self):
        try:
            object.__setattr__(self, "algorithm", Algorithm.parse(self.algorithm))
        except ValueError as exc:
            raise ConfigError(f"algorithm: {exc}") from None
        for name in ("taps", "steps", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        if self.taps < 1:
            raise ConfigError("taps must be ≥ 1")
        if self.steps < 1:
            raise ConfigError("steps must be ≥ 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        for name in ("mu", "noise_std"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
                raise ConfigError(f"{name} must be a number, got {value!r}")
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite")
        if not self.mu > 0:
            raise ConfigError("mu must be > 0")
        if not self.noise_std >= 0:
            raise ConfigError("noise_std must be ≥ 0")
        if self.input_dist != "gaussian":
            raise ConfigError(f"input must be 'gaussian', got {self.input_dist!r}")
        if self.init not in ("zero", "target"):
            raise ConfigError(f"init must be 'zero' or 'target', got {self.init!r}")
        if isinstance(self.target, str):
            if self.target != "random":
                raise ConfigError(f"target must be 'random' or a list of 4-tuples, got {self.target!r}")
        else:
            try:
                rows = tuple(tuple(float(x) for x in row) for row in self.target)
            except (TypeError, ValueError):
                raise ConfigError("target must be a list of [x1, x2, x3, x4] entries") from None
            if len(rows) != self.taps:
                raise ConfigError(f"target has {len(rows)} entries but taps = {self.taps}")
            if any(len(r) != 4 for r in rows):
                raise ConfigError("each target entry must have exactly 4 coordinates")
            if not all(math.isfinite(x) for r in rows for x in r):
                raise ConfigError("target coordinates must be finite")
            if self.algorithm is Algorithm.CLMS and any(r[2] or r[3] for r in rows):
                raise ConfigError("target must lie in C(i) (x3 = x4 = 0) for clms")
            object.__setattr__(self, "target", rows)


@dataclass
class LearningCurve:
    """Per-step ``(step, sq_error, weight_err_sq)`` rows.

    Both metrics at step ``l`` use the weights ``W_l`` in force before that
    step's update.  A diverged run ends with a marker row ``(l, inf, inf)``.
    """

    rows: list = field(default_factory=list)
    diverged: bool = False

    @property
    def final(self) -> tuple[float, float]:
        _, sq, werr = self.rows[-1]
        return sq, werr

    def column(self, name: str) -> np.ndarray:
        idx = CSV_HEADER.index(name)
        return np.array([r[idx] for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for step, sq, werr in self.rows:
            writer.writerow((step, f"{sq:.17g}", f"{werr:.17g}"))
        return buf.getvalue()

    def write(self, path) -> None:
        write_atomic(path, self.to_csv())


def write_atomic(path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; identical seeds give identical streams."""
    return np.random.Generator(np.random.PCG64(seed))


def _to_vector(coords: np.ndarray, complex_only: bool) -> BicomplexVector:
    if complex_only:
        return BicomplexVector(_COMPLEX_SCALE * (coords[:, 0] + 1j * coords[:, 1]))
    return BicomplexVector.from_coords(coords)


def draw_target(rng: np.random.Generator, n: int, complex_only: bool = False) -> BicomplexVector:
    return _to_vector(rng.normal(0.0, 0.5, size=(n, 4)), complex_only)


def gen_input(rng: np.random.Generator, n: int, steps: int,
              complex_only: bool = False) -> list[BicomplexVector]:
    """Input stream of ``steps`` tap vectors, unit expected power per tap."""
    block = rng.normal(0.0, 0.5, size=(steps, n, 4))
    return [_to_vector(block[t], complex_only) for t in range(steps)]


def synth_desired(W_opt: BicomplexVector, X: BicomplexVector, rng: np.random.Generator,
                  noise_std: float, complex_only: bool = False) -> Bicomplex:
    """``D = X^T W_opt + noise`` with ``E||noise||^2 = noise_std**2``."""
    if len(W_opt) != len(X):
        raise DimensionError(f"length mismatch: {len(W_opt)} != {len(X)}")
    nu = rng.normal(0.0, 0.5, size=4) * noise_std
    clean = X.dot(W_opt)
    if complex_only:
        return clean + Bicomplex(_COMPLEX_SCALE * complex(nu[0], nu[1]))
    return clean + Bicomplex.from_coords(*nu)


def _target(cfg: ExperimentConfig, rng, complex_only: bool) -> BicomplexVector:
    if cfg.target == "random":
        return draw_target(rng, cfg.taps, complex_only)
    return BicomplexVector.from_coords(cfg.target)


def _stream(cfg: ExperimentConfig, complex_only: bool):
    """Target and the per-step ``(X, D)`` pairs for a config."""
    rng = make_rng(cfg.seed)
    W_opt = _target(cfg, rng, complex_only)
    X_stream = gen_input(rng, cfg.taps, cfg.steps, complex_only)

    def pairs() -> Iterator[tuple[BicomplexVector, Bicomplex]]:
        for X in X_stream:
            yield X, synth_desired(W_opt, X, rng, cfg.noise_std, complex_only)
    return W_opt, pairs()


def _make_filter(cfg: ExperimentConfig, algorithm: Algorithm, mu: float, W_opt: BicomplexVector):
    w0 = W_opt if cfg.init == "target" else None
    return AdaptiveFilter(algorithm, cfg.taps, mu, w0)


def run_experiment(cfg: ExperimentConfig) -> LearningCurve:
    """Run ``cfg.algorithm`` on seeded synthetic data and record the curve.

    The run stops early with an ``inf`` marker row once the squared error
    exceeds ``DIVERGENCE_THRESHOLD`` or the weights stop being finite.
    """
    complex_only = cfg.algorithm is Algorithm.CLMS
    W_opt, pairs = _stream(cfg, complex_only)
    filt = _make_filter(cfg, cfg.algorithm, cfg.mu, W_opt)
    curve = LearningCurve()
    for step, (X, D) in enumerate(pairs):
        werr = (filt.weights - W_opt).norm_sq()
        try:
            rec = filt.step(X, D)
        except ValueError:
            rec = None
        if rec is None or not rec.sq_error <= DIVERGENCE_THRESHOLD:
            curve.rows.append((step, math.inf, math.inf))
            curve.diverged = True
            break
        curve.rows.append((step, rec.sq_error, werr))
    return curve


def _trajectory(cfg: ExperimentConfig, algorithm: Algorithm, mu: float,
                complex_only: bool) -> Iterator[BicomplexVector]:
    W_opt, pairs = _stream(cfg, complex_only)
    filt = _make_filter(cfg, algorithm, mu, W_opt)
    for X, D in pairs:
        filt.step(X, D)
        yield filt.weights


def compare_trajectories(cfg: ExperimentConfig, algo_a, algo_b, *,
                         mu_a: float | None = None, mu_b: float | None = None,
                         relative: bool = False) -> float:
    """Largest weight deviation between two variants fed the same stream.

    Each variant's native state (idempotent channels, Cartesian components,
    plain complex weights) is mapped back to a bicomplex weight vector after
    every step; the result is ``max_l sqrt(sum_k ||W^a_lk - W^b_lk||^2)``.
    With ``relative=True`` each step's deviation is divided by
    ``max(1, ||W^a_l||)``, which keeps the measure meaningful on runs whose
    weights grow without bound.  If either variant is ``CLMS`` the stream is
    restricted to ``C(i)``.
    """
    algo_a = Algorithm.parse(algo_a)
    algo_b = Algorithm.parse(algo_b)
    complex_only = Algorithm.CLMS in (algo_a, algo_b)
    mu_a = cfg.mu if mu_a is None else mu_a
    mu_b = cfg.mu if mu_b is None else mu_b
    worst = 0.0
    for Wa, Wb in zip(_trajectory(cfg, algo_a, mu_a, complex_only),
                      _trajectory(cfg, algo_b, mu_b, complex_only)):
        dev = math.sqrt((Wa - Wb).norm_sq())
        if relative:
            dev /= max(1.0, math.sqrt(Wa.norm_sq()))
        worst = max(worst, dev)
    return worst


@dataclass(frozen=True)
class SweepResult:
    mu: float
    final_sq_error: float
    final_weight_err_sq: float
    diverged: bool
    curve: LearningCurve


def mu_sweep(cfg: ExperimentConfig, mu_values: Sequence[float]) -> list[SweepResult]:
    """One :func:`run_experiment` per step size, all sharing ``cfg.seed``."""
    mu_values = list(mu_values)
    if not mu_values:
        raise ConfigError("mu_values must not be empty")
    out = []
    for mu in mu_values:
        curve = run_experiment(replace(cfg, mu=mu))
        sq, werr = curve.final
        out.append(SweepResult(float(mu), sq, werr, curve.diverged, curve))
    return out
