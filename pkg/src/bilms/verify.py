"""Executable verification suites behind ``bilms verify``.

Each suite returns a list of :class:`Check` rows: the worst value observed
over its samples, the tolerance it is held to, and whether it passed.
Suite numbers match the groups printed by the CLI.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .bicomplex import (
    E1, E2, ONE, K, ZERO_DIVISOR_RTOL, Bicomplex, BicomplexMatrix, BicomplexVector,
    ZeroDivisorError, finsler_pow4, finsler_product, mul_cartesian, norm_hyperbolic,
)
from .gradients import (
    DEFAULT_FD, FDConfig, PartialKind, bc_partial, complex_grad, grad,
    idempotent_partial, leibniz_residual, wirtinger,
)
from .harness import ExperimentConfig, compare_trajectories, make_rng, run_experiment
from .lms import Algorithm

SUITES = {
    1: "algebra",
    2: "norms",
    3: "gradient oracle",
    4: "learning-rule derivation",
    5: "decomposition theorems",
    6: "complex embedding",
    7: "convergence",
}


@dataclass(frozen=True)
class Check:
    suite: int
    name: str
    value: float
    tol: float
    passed: bool

    @classmethod
    def at_most(cls, suite: int, name: str, value: float, tol: float) -> Check:
        return cls(suite, name, float(value), tol, bool(value <= tol))

    @classmethod
    def at_least(cls, suite: int, name: str, value: float, tol: float) -> Check:
        return cls(suite, name, float(value), tol, bool(value >= tol))


def random_bicomplex(rng: np.random.Generator, scale: float = 1.0) -> Bicomplex:
    return Bicomplex.from_coords(*rng.normal(0.0, scale, size=4))


def random_vector(rng: np.random.Generator, n: int) -> BicomplexVector:
    return BicomplexVector.from_coords(rng.normal(size=(n, 4)))


def _dist(a: Bicomplex, b: Bicomplex) -> float:
    return (a - b).norm()


def _worst(values: Iterable[float]) -> float:
    return max(values, default=0.0)


# -- 1. algebra ---------------------------------------------------------------

def algebra_suite(rng: np.random.Generator, samples: int = 10_000) -> list[Check]:
    pairs = [(random_bicomplex(rng), random_bicomplex(rng), random_bicomplex(rng))
             for _ in range(samples)]

    def rel(a, b, scale):
        return _dist(a, b) / max(scale, 1e-300)

    mul_err = _worst(rel(Z * W, mul_cartesian(Z, W), mul_cartesian(Z, W).norm()) for Z, W, _ in pairs)
    assoc = _worst(rel((Z * W) * V, Z * (W * V), Z.norm() * W.norm() * V.norm()) for Z, W, V in pairs)
    comm = _worst(rel(Z * W, W * Z, Z.norm() * W.norm()) for Z, W, _ in pairs)
    dist = _worst(rel(Z * (W + V), Z * W + Z * V, Z.norm() * (W.norm() + V.norm())) for Z, W, V in pairs)
    add_assoc = _worst(rel((Z + W) + V, Z + (W + V), Z.norm() + W.norm() + V.norm()) for Z, W, V in pairs)

    identities = max(
        _dist(E1 * E2, Bicomplex(0)), _dist(E1 * E1, E1), _dist(E2 * E2, E2),
        _dist(E1 + E2, ONE), _dist(E1 - E2, K),
    )

    def composition_err(Z):
        bar, dag, star = Z.conj_bar, Z.conj_dagger, Z.conj_star
        return max(
            _dist(bar().conj_bar(), Z), _dist(dag().conj_dagger(), Z), _dist(star().conj_star(), Z),
            _dist(bar().conj_dagger(), star()), _dist(dag().conj_bar(), star()),
            _dist(bar().conj_star(), dag()), _dist(dag().conj_star(), bar()),
        )
    composition = _worst(composition_err(Z) for Z, _, _ in pairs)

    def hom_err(Z, W):
        errs = []
        for mode in ("bar", "dagger", "star"):
            errs.append(_dist((Z * W).conj(mode), Z.conj(mode) * W.conj(mode)))
            errs.append(_dist((Z + W).conj(mode), Z.conj(mode) + W.conj(mode)))
        return max(errs)
    homomorphism = _worst(hom_err(Z, W) for Z, W, _ in pairs)

    def dagger_scalar(Z):
        P = Z * Z.conj_dagger()
        target = Bicomplex(Z.z1 ** 2 + Z.z2 ** 2)
        l1, l2 = P.idempotent()
        return max(_dist(P, target), abs(l1 - l2))
    dagger = _worst(dagger_scalar(Z) for Z, _, _ in pairs)

    def roundtrip(Z):
        back = Bicomplex.from_idempotent(*Z.idempotent())
        return max(abs(a - b) for a, b in zip(back.coords(), Z.coords())) / max(1.0, Z.norm())
    rt = _worst(roundtrip(Z) for Z, _, _ in pairs)

    eps = np.finfo(float).eps
    return [
        Check.at_most(1, f"mul: idempotent vs Cartesian expansion, {samples} pairs (rel)", mul_err, 1e-12),
        Check.at_most(1, "mul associativity (rel)", assoc, 1e-12),
        Check.at_most(1, "mul commutativity (rel)", comm, 1e-12),
        Check.at_most(1, "distributivity (rel)", dist, 1e-12),
        Check.at_most(1, "add associativity (rel)", add_assoc, 1e-12),
        Check.at_most(1, "e1 e2 = 0, e1^2 = e1, e2^2 = e2, e1 + e2 = 1, e1 - e2 = k", identities, eps),
        Check.at_most(1, "conjugation composition table", composition, 1e-15),
        Check.at_most(1, "conjugations are ring homomorphisms", homomorphism, 1e-12),
        Check.at_most(1, "Z Z^dagger = z1^2 + z2^2 in C(i)", dagger, 1e-12),
        Check.at_most(1, "idempotent round trip (rel)", rt, 1e-14),
    ]


# -- 2. norms -----------------------------------------------------------------

def norms_suite(rng: np.random.Generator, samples: int = 10_000) -> list[Check]:
    pairs = [(random_bicomplex(rng), random_bicomplex(rng)) for _ in range(samples)]

    def euclid_err(Z):
        l1, l2 = Z.idempotent()
        return abs(Z.norm() - math.sqrt(abs(l1) ** 2 + abs(l2) ** 2) / math.sqrt(2)) / max(1.0, Z.norm())
    euclid = _worst(euclid_err(Z) for Z, _ in pairs)

    excess = _worst((Z * W).norm() - math.sqrt(2) * Z.norm() * W.norm() for Z, W in pairs)

    def hyper_err(Z, W):
        lhs = norm_hyperbolic(Z * W)
        rhs = norm_hyperbolic(Z) * norm_hyperbolic(W)
        return max(abs(a - b) for a, b in zip(lhs, rhs)) / max(1.0, Z.norm() * W.norm())
    hyper = _worst(hyper_err(Z, W) for Z, W in pairs)

    def hyper_euclid(Z):
        m1, m2 = norm_hyperbolic(Z)
        return abs(Z.norm_sq() - (m1 * m1 + m2 * m2) / 2) / max(1.0, Z.norm_sq())
    hyper_e = _worst(hyper_euclid(Z) for Z, _ in pairs)

    def finsler_err(Z):
        f4 = finsler_pow4(Z)
        P = finsler_product(Z)
        scale = max(1.0, f4)
        nonreal = math.hypot(P.x2, P.x3, P.x4) / scale
        return max(abs(P.x1 - f4) / scale, nonreal)
    finsler = _worst(finsler_err(Z) for Z, _ in pairs)

    # near the zero-divisor cone: shrink one idempotent slot over many decades
    probes = [Z for Z, _ in pairs[:200]]
    for t in np.logspace(-17, 0, 120):
        l1, l2 = random_bicomplex(rng).idempotent()
        probes.append(Bicomplex.from_idempotent(l1 * t, l2))
        probes.append(Bicomplex.from_idempotent(l1, l2 * t))
    probes += [E1, E2, Bicomplex(0), 3 * E1 + 0j * E2]
    mismatches = 0
    inverse_err = 0.0
    for Z in probes:
        m1, m2 = norm_hyperbolic(Z)
        singular = min(m1, m2) <= ZERO_DIVISOR_RTOL * max(1.0, Z.norm())
        try:
            Zi = Z.inverse()
            raised = False
        except ZeroDivisorError:
            raised = True
        if raised != singular or (finsler_pow4(Z) == 0 and not raised):
            mismatches += 1
        if not raised and min(m1, m2) > 1e-3:
            inverse_err = max(inverse_err, _dist(Z * Zi, ONE))

    return [
        Check.at_most(2, "Euclidean norm: idempotent formula (rel)", euclid, 1e-12),
        Check.at_most(2, f"||ZW|| - sqrt(2)||Z|| ||W||, {samples} pairs", excess, 1e-12),
        Check.at_most(2, "hyperbolic norm is multiplicative (rel)", hyper, 1e-12),
        Check.at_most(2, "||Z||^2 = (m1^2 + m2^2)/2 (rel)", hyper_e, 1e-12),
        Check.at_most(2, "Finsler product Z Zbar Z* Z^dagger = |l1|^2 |l2|^2 (rel)", finsler, 1e-10),
        Check.at_most(2, "inverse raises exactly below the zero-divisor threshold (mismatches)",
                      mismatches, 0),
        Check.at_most(2, "Z Z^-1 = 1 away from the cone", inverse_err, 1e-10),
    ]


# -- 3. gradient oracle ---------------------------------------------------------

_CONJ = {
    None: lambda w: w,
    "bar": Bicomplex.conj_bar,
    "star": Bicomplex.conj_star,
    "dagger": Bicomplex.conj_dagger,
}


def _factor_battery(rng: np.random.Generator) -> list[Callable[[Bicomplex], Bicomplex]]:
    """Products of powers of Z and its conjugates with random coefficients."""
    a, b, c = (random_bicomplex(rng) for _ in range(3))
    return [
        lambda w: w,
        lambda w: w.conj_bar(),
        lambda w: w.conj_star(),
        lambda w: w.conj_dagger(),
        lambda w: a * w * w.conj_bar(),
        lambda w: w.conj_star() * w.conj_dagger() + b,
        lambda w: a * w * w + c * w.conj_star(),
        lambda w: w.conj_bar() * w.conj_bar() * w.conj_dagger(),
        lambda w: b * w.conj_star() * w + a,
        lambda w: c,
    ]


def gradient_suite(rng: np.random.Generator, cfg: FDConfig = DEFAULT_FD, points: int = 100) -> list[Check]:
    checks = []
    self_value = 4 * cfg.c
    annihilate = 0.0
    self_err = 0.0
    finsler_err = 0.0
    idem_err = 0.0
    matched = {k: k.conjugation for k in PartialKind}
    for _ in range(points):
        Z = random_bicomplex(rng)
        for kind in PartialKind:
            for conj, f in _CONJ.items():
                val = bc_partial(f, Z, kind, cfg)
                if conj == matched[kind]:
                    self_err = max(self_err, _dist(val, Bicomplex(self_value)))
                else:
                    annihilate = max(annihilate, val.norm())
            # each partial of Z Zbar Z* Z^dagger is 4c times the other three factors
            factors = {c: f(Z) for c, f in _CONJ.items()}
            rest = ONE
            for c, v in factors.items():
                if c != matched[kind]:
                    rest = rest * v
            expected = self_value * rest
            got = bc_partial(finsler_product, Z, kind, cfg)
            finsler_err = max(finsler_err, _dist(got, expected) / expected.norm())
            idem_err = max(idem_err, _dist(idempotent_partial(finsler_product, Z, kind, cfg),
                                           bc_partial(finsler_product, Z, kind, cfg)))
    checks += [
        Check.at_most(3, "annihilation table: each operator kills the 3 mismatched conjugates",
                      annihilate, 1e-7),
        Check.at_most(3, f"self value: operator on its own conjugate = 4c = {self_value:g}", self_err, 1e-7),
        Check.at_most(3, "Finsler gradient = 4c x (other three factors) (rel)", finsler_err, 1e-5),
        Check.at_most(3, "idempotent form 4c(d/dl e1 + d/dl e2) matches coordinate form",
                      idem_err, 1e-6),
    ]

    # LeibBCn on random products
    residual = 0.0
    for _ in range(points):
        battery = _factor_battery(rng)
        f = battery[rng.integers(len(battery))]
        g = battery[rng.integers(len(battery))]
        kind = list(PartialKind)[rng.integers(4)]
        residual = max(residual, leibniz_residual(f, g, random_bicomplex(rng), kind, cfg))
    Z0 = Bicomplex.from_coords(1, 1, 1, 1)
    residual = max(
        residual,
        leibniz_residual(lambda w: w, Bicomplex.conj_star, Z0, PartialKind.D_ZSTAR, cfg),
        leibniz_residual(lambda w: w * w.conj_bar(), lambda w: w.conj_star() * w.conj_dagger(),
                         random_bicomplex(rng), PartialKind.D_ZBAR, cfg),
    )
    checks.append(Check.at_most(3, f"LeibBCn: Leibniz residual, {points} random products",
                                residual, 1e-6))

    checks.append(Check.at_most(3, "complex Wirtinger identities, n = 3 (11 forms)",
                                complex_forms_error(rng, cfg.h), 1e-6))
    checks.append(Check.at_most(3, "bicomplex gradient identities, n = 3 (6 forms, factor 4c)",
                                bicomplex_forms_error(rng, cfg), 1e-6))

    a = complex(*rng.normal(size=2))
    stat = lambda z: abs(z - a) ** 2
    at_a = abs(wirtinger(stat, a, "dzbar", cfg.h))
    away = min(abs(wirtinger(stat, a + np.exp(1j * t), "dzbar", cfg.h))
               for t in np.linspace(0, 2 * np.pi, 16))
    checks.append(Check.at_most(3, "stationary point: d|z-a|^2/dzbar = 0 at z = a", at_a, 1e-7))
    checks.append(Check.at_least(3, "stationary point: |d|z-a|^2/dzbar| at |z-a| = 1", away, 0.1))

    pw = 0.0
    for _ in range(points):
        z = complex(*rng.normal(size=2))
        for k in range(4):
            for p, expected in ((2 * k, k * z * abs(z) ** (2 * k - 2)),
                                (2 * k + 1, (2 * k + 1) / 2 * z * abs(z) ** (2 * k - 1))):
                got = wirtinger(lambda u: abs(u) ** p, z, "dzbar", cfg.h)
                pw = max(pw, abs(got - expected) / max(1.0, abs(expected)))
    checks.append(Check.at_most(3, "d|z|^(2k)/dzbar and d|z|^(2k+1)/dzbar formulas, k = 0..3 (rel)",
                                pw, 1e-6))
    return checks


def complex_forms_error(rng: np.random.Generator, h: float = 1e-5, n: int = 3) -> float:
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    a = rng.normal(size=n) + 1j * rng.normal(size=n)
    R = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    zero = np.zeros(n)
    cases = [
        ("dz", lambda v: a @ v, a),
        ("dz", lambda v: v.conj() @ a, zero),
        ("dz", lambda v: v.conj() @ R @ v, R.T @ z.conj()),
        ("dz", lambda v: a @ v + v @ a, 2 * a),
        ("dz", lambda v: a @ v.conj() + v.conj() @ a, zero),
        ("dz", lambda v: v.conj() @ v.conj(), zero),
        ("dz", lambda v: v.conj() @ v, z.conj()),
        ("dz", lambda v: v @ v, 2 * z),
        ("dzbar", lambda v: a.conj() @ v, zero),
        ("dzbar", lambda v: v.conj() @ a, a),
        ("dzbar", lambda v: v.conj() @ R @ v, R @ z),
    ]
    return max(np.linalg.norm(complex_grad(F, z, which, h) - expected) for which, F, expected in cases)


def bicomplex_forms_error(rng: np.random.Generator, cfg: FDConfig = DEFAULT_FD, n: int = 3) -> float:
    Z = random_vector(rng, n)
    a = random_vector(rng, n)
    R = BicomplexMatrix(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)),
                        rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    zero = BicomplexVector.zeros(n)
    s = 4 * cfg.c
    bar, star = PartialKind.D_ZBAR, PartialKind.D_ZSTAR
    cases = [
        (bar, lambda v: a.conj("bar").dot(v), zero),
        (bar, lambda v: v.conj("bar").dot(a), a * s),
        (bar, lambda v: v.conj("bar").dot(R @ v), (R @ Z) * s),
        (star, lambda v: a.conj("bar").dot(v), zero),
        (star, lambda v: v.conj("star").dot(a), a * s),
        (star, lambda v: v.conj("star").dot(R @ v), (R @ Z) * s),
    ]
    return max(math.sqrt((grad(F, Z, kind, cfg) - expected).norm_sq()) for kind, F, expected in cases)


# -- 4. learning-rule derivation ------------------------------------------------

def learning_rule_suite(rng: np.random.Generator, cfg: FDConfig = DEFAULT_FD,
                        points: int = 100, n: int = 3) -> list[Check]:
    rel = {"star": 0.0, "bar": 0.0}
    err_e = {"star": 0.0, "bar": 0.0}
    err_conj = {"star": 0.0, "bar": 0.0}
    kinds = {"star": PartialKind.D_ZSTAR, "bar": PartialKind.D_ZBAR}
    for _ in range(points):
        W = random_vector(rng, n)
        X = random_vector(rng, n)
        D = random_bicomplex(rng)
        E = D - X.dot(W)
        for mode, kind in kinds.items():
            error = lambda v: D - X.dot(v)
            num = grad(lambda v: error(v) * error(v).conj(mode), W, kind, cfg)
            expected = X.conj(mode) * (-2 * E)
            rel[mode] = max(rel[mode], math.sqrt((num - expected).norm_sq() / expected.norm_sq()))
            err_e[mode] = max(err_e[mode], math.sqrt(grad(error, W, kind, cfg).norm_sq()))
            num_c = grad(lambda v: error(v).conj(mode), W, kind, cfg)
            err_conj[mode] = max(err_conj[mode], math.sqrt((num_c - X.conj(mode) * -2.0).norm_sq()))
    return [
        Check.at_most(4, "Theorem LMSR1: grad_{W*}(E E*) = -2 E X* (rel)", rel["star"], 1e-5),
        Check.at_most(4, "Theorem LMSR1: grad_{W*}(E) = 0", err_e["star"], 1e-7),
        Check.at_most(4, "Theorem LMSR1: grad_{W*}(E*) = -2 X*", err_conj["star"], 1e-6),
        Check.at_most(4, "Theorem SLMSalgo: grad_{Wbar}(E Ebar) = -2 E Xbar (rel)", rel["bar"], 1e-5),
        Check.at_most(4, "Theorem SLMSalgo: grad_{Wbar}(E) = 0", err_e["bar"], 1e-7),
        Check.at_most(4, "Theorem SLMSalgo: grad_{Wbar}(Ebar) = -2 Xbar", err_conj["bar"], 1e-6),
    ]


# -- 5-7. learning rules on streams --------------------------------------------

DECOMPOSITION_MU = 0.01

DECOMPOSITIONS = (
    ("Theorem LMS1decomp: BLMS1 vs idempotent split", Algorithm.BLMS1, Algorithm.BLMS1_SPLIT),
    ("Theorem LMS2decomp: BLMS2 vs idempotent split", Algorithm.BLMS2, Algorithm.BLMS2_SPLIT),
    ("BLMS1 vs Cartesian split W1 + W2 j", Algorithm.BLMS1, Algorithm.BLMS1_CART),
    ("BLMS2 vs Cartesian split W1 + W2 j", Algorithm.BLMS2, Algorithm.BLMS2_CART),
)


def decomposition_suite(seeds: Iterable[int] = range(1, 6), steps: int = 1000, taps: int = 4,
                        mu: float = DECOMPOSITION_MU) -> list[Check]:
    seeds = list(seeds)
    checks = []
    for name, a, b in DECOMPOSITIONS:
        worst = max(compare_trajectories(ExperimentConfig(taps=taps, mu=mu, steps=steps, seed=s), a, b)
                    for s in seeds)
        checks.append(Check.at_most(5, f"{name} ({steps} steps, n={taps}, mu={mu:g})", worst, 1e-10))
    return checks


def embedding_suite(seeds: Iterable[int] = range(1, 6), steps: int = 1000, taps: int = 4,
                    mu: float = 0.05) -> list[Check]:
    worst = max(
        compare_trajectories(ExperimentConfig(taps=taps, mu=mu, steps=steps, seed=s),
                             Algorithm.BLMS1, Algorithm.CLMS, mu_b=2 * mu)
        for s in seeds
    )
    return [Check.at_most(6, f"BLMS1(mu) = CLMS(2 mu) on C(i) data ({steps} steps)", worst, 1e-12)]


def convergence_suite(seeds: Iterable[int] = range(1, 11), taps: int = 4, mu: float = 0.05,
                      steps: int = 2000, noise_std: float = 0.1) -> list[Check]:
    seeds = list(seeds)
    checks = []
    for algo in (Algorithm.BLMS1, Algorithm.CLMS):
        final = 0.0
        ratio = 0.0
        runtime = 0.0
        for s in seeds:
            cfg = ExperimentConfig(algorithm=algo, taps=taps, mu=mu, steps=steps, seed=s)
            t0 = time.perf_counter()
            curve = run_experiment(cfg)
            runtime = max(runtime, time.perf_counter() - t0)
            werr = curve.column("weight_err_sq")
            final = max(final, werr[-1])
            ratio = max(ratio, werr[-1] / werr[0])
        checks.append(Check.at_most(7, f"{algo.value.upper()} noiseless final weight_err_sq", final, 1e-16))
        checks.append(Check.at_most(7, f"{algo.value.upper()} weight_err_sq[end] / weight_err_sq[0]",
                                    ratio, 1e-12))
        noise_power = noise_std ** 2
        lo, hi = math.inf, 0.0
        for s in seeds:
            curve = run_experiment(ExperimentConfig(algorithm=algo, taps=taps, mu=mu, steps=steps,
                                                    seed=s, noise_std=noise_std))
            r = float(np.mean(curve.column("sq_error")[-500:])) / noise_power
            lo, hi = min(lo, r), max(hi, r)
        checks.append(Check.at_most(7, f"{algo.value.upper()} steady-state MSE / noise power, upper",
                                    hi, 2.0))
        checks.append(Check.at_least(7, f"{algo.value.upper()} steady-state MSE / noise power, lower",
                                     lo, 0.5))
        checks.append(Check.at_most(7, f"{algo.value.upper()} runtime per run [s]", runtime, 1.0))
    return checks


def run_all(cfg: FDConfig = DEFAULT_FD, seed: int = 2024) -> list[Check]:
    rng = make_rng(seed)
    return (
        algebra_suite(rng)
        + norms_suite(rng)
        + gradient_suite(rng, cfg)
        + learning_rule_suite(rng, cfg)
        + decomposition_suite()
        + embedding_suite()
        + convergence_suite()
    )


def format_table(checks: list[Check], cfg: FDConfig = DEFAULT_FD) -> str:
    lines = [f"operator normalization c = {cfg.c:g}, finite-difference h = {cfg.h:g}", ""]
    width = max(len(c.name) for c in checks)
    lines.append(f"{'#':>2}  {'check':<{width}}  {'worst':>10}  {'tol':>8}  result")
    current = None
    for c in checks:
        if c.suite != current:
            current = c.suite
            lines.append(f"--  {SUITES[c.suite]}")
        flag = "PASS" if c.passed else "FAIL"
        lines.append(f"{c.suite:>2}  {c.name:<{width}}  {c.value:>10.3g}  {c.tol:>8.3g}  {flag}")
    n_fail = sum(not c.passed for c in checks)
    lines.append("")
    lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    return "\n".join(lines)
