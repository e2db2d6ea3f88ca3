"""Complex and bicomplex LMS learning rules.

All step functions are pure: they take a state and return the updated
state together with a record of the output and error at that step.

============  ====================================================
algorithm     update
============  ====================================================
CLMS          ``w += mu * e * conj(x)``
BLMS1         ``W += 2 mu * E * X^*``   (star conjugate)
BLMS2         ``W += 2 mu * E * Xbar``  (bar conjugate)
BLMS1_SPLIT   BLMS1 as two complex LMS filters on the idempotent parts
BLMS2_SPLIT   BLMS2 as two cross-coupled complex LMS filters
BLMS1_CART    BLMS1 on the ``W1 + W2 j`` components
BLMS2_CART    BLMS2 on the ``W1 + W2 j`` components
============  ====================================================
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .bicomplex import Bicomplex, BicomplexVector, DimensionError

__all__ = [
    "Algorithm", "FilterState", "ComplexFilterState", "StepRecord",
    "ComplexStepRecord", "predict", "clms_step", "blms1_step", "blms2_step",
    "blms1_split_step", "blms2_split_step", "blms_cartesian_step", "loss",
    "AdaptiveFilter",
]


class Algorithm(str, enum.Enum):
    CLMS = "clms"
    BLMS1 = "blms1"
    BLMS2 = "blms2"
    BLMS1_SPLIT = "blms1_split"
    BLMS2_SPLIT = "blms2_split"
    BLMS1_CART = "blms1_cart"
    BLMS2_CART = "blms2_cart"

    @classmethod
    def parse(cls, name) -> Algorithm:
        if isinstance(name, Algorithm):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            choices = ", ".join(a.value for a in cls)
            raise ValueError(f"unknown algorithm {name!r}; expected one of {choices}") from None


def _check_mu(mu: float) -> float:
    mu = float(mu)
    if not mu > 0:
        raise ValueError(f"mu must be > 0, got {mu}")
    return mu


@dataclass(frozen=True)
class FilterState:
    W: BicomplexVector
    mu: float
    step: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mu", _check_mu(self.mu))
        if self.step < 0:
            raise ValueError("step must be nonnegative")

    @classmethod
    def zeros(cls, n: int, mu: float) -> FilterState:
        return cls(BicomplexVector.zeros(n), mu)


@dataclass(frozen=True)
class ComplexFilterState:
    w: np.ndarray
    mu: float
    step: int = 0

    def __post_init__(self):
        w = np.array(self.w, dtype=np.complex128, ndmin=1)
        if w.ndim != 1 or len(w) < 1:
            raise DimensionError(f"weights must be a non-empty 1-D vector, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        w.flags.writeable = False
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "mu", _check_mu(self.mu))
        if self.step < 0:
            raise ValueError("step must be nonnegative")

    @classmethod
    def zeros(cls, n: int, mu: float) -> ComplexFilterState:
        return cls(np.zeros(n, dtype=np.complex128), mu)


class StepRecord(NamedTuple):
    Y: Bicomplex
    E: Bicomplex
    sq_error: float


class ComplexStepRecord(NamedTuple):
    y: complex
    e: complex
    sq_error: float


def _as_vector(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    if len(x) != n:
        raise DimensionError(f"input has length {len(x)} but the filter has {n} taps")
    return x


def predict(state: FilterState, X: BicomplexVector) -> Bicomplex:
    """Filter output ``Y = X^T W`` (no conjugation)."""
    return X.dot(state.W)


def clms_step(state: ComplexFilterState, x, d) -> tuple[ComplexStepRecord, ComplexFilterState]:
    x = _as_vector(x, len(state.w))
    d = complex(d)
    y = complex(np.dot(x, state.w))
    e = d - y
    w = state.w + state.mu * e * x.conj()
    return ComplexStepRecord(y, e, abs(e) ** 2), ComplexFilterState(w, state.mu, state.step + 1)


def _blms_step(state: FilterState, X: BicomplexVector, D: Bicomplex, mode: str):
    if len(X) != len(state.W):
        raise DimensionError(f"input has length {len(X)} but the filter has {len(state.W)} taps")
    Y = X.dot(state.W)
    E = D - Y
    W = state.W + X.conj(mode) * (2 * state.mu * E)
    return StepRecord(Y, E, E.norm_sq()), FilterState(W, state.mu, state.step + 1)


def blms1_step(state: FilterState, X: BicomplexVector, D: Bicomplex) -> tuple[StepRecord, FilterState]:
    """One step of ``W <- W + 2 mu E X^*``."""
    return _blms_step(state, X, D, "star")


def blms2_step(state: FilterState, X: BicomplexVector, D: Bicomplex) -> tuple[StepRecord, FilterState]:
    """One step of ``W <- W + 2 mu E Xbar``."""
    return _blms_step(state, X, D, "bar")


def _channel(state: ComplexFilterState, x: np.ndarray, d: complex, regressor: np.ndarray):
    y = complex(np.dot(x, state.w))
    e = d - y
    w = state.w + 2 * state.mu * e * regressor.conj()
    return ComplexStepRecord(y, e, abs(e) ** 2), ComplexFilterState(w, state.mu, state.step + 1)


def _split_inputs(state1, state2, x_pair, d_pair):
    if state1.mu != state2.mu:
        raise ValueError(f"split channels must share mu, got {state1.mu} and {state2.mu}")
    n = len(state1.w)
    if len(state2.w) != n:
        raise DimensionError("split channels have different lengths")
    x1, x2 = (_as_vector(x, n) for x in x_pair)
    d1, d2 = (complex(d) for d in d_pair)
    return x1, x2, d1, d2


def blms1_split_step(state1: ComplexFilterState, state2: ComplexFilterState, x_pair, d_pair):
    """BLMS1 on the idempotent parts: two independent complex LMS filters.

    Channel ``c`` runs ``w_c += 2 mu e_c conj(x_c)`` on ``(x_c, d_c)``.

    Returns:
        ``((record1, record2), (state1, state2))``.
    """
    x1, x2, d1, d2 = _split_inputs(state1, state2, x_pair, d_pair)
    r1, s1 = _channel(state1, x1, d1, x1)
    r2, s2 = _channel(state2, x2, d2, x2)
    return (r1, r2), (s1, s2)


def blms2_split_step(state1: ComplexFilterState, state2: ComplexFilterState, x_pair, d_pair):
    """BLMS2 on the idempotent parts; each channel's regressor is the other's input.

    ``w1 += 2 mu e1 conj(x2)`` and ``w2 += 2 mu e2 conj(x1)``, where
    ``e_c = d_c - x_c^T w_c``.
    """
    x1, x2, d1, d2 = _split_inputs(state1, state2, x_pair, d_pair)
    r1, s1 = _channel(state1, x1, d1, x2)
    r2, s2 = _channel(state2, x2, d2, x1)
    return (r1, r2), (s1, s2)


def blms_cartesian_step(variant: Algorithm, W1, W2, X1, X2, D1, D2, mu: float):
    """BLMS1/BLMS2 written on the ``C(i)`` components of ``W = W1 + W2 j``.

    The error ``E = E1 + E2 j`` comes from the recombined bicomplex
    prediction; the weight update is then the coupled complex pair::

        BLMS1_CART: W1 += 2mu (E1 X1bar + E2 X2bar),  W2 += 2mu (E2 X1bar - E1 X2bar)
        BLMS2_CART: W1 += 2mu (E1 X1bar - E2 X2bar),  W2 += 2mu (E2 X1bar + E1 X2bar)

    Returns:
        ``(record, W1_new, W2_new)``.
    """
    variant = Algorithm.parse(variant)
    mu = _check_mu(mu)
    W = BicomplexVector(W1, W2)
    n = len(W)
    X = BicomplexVector(_as_vector(X1, n), _as_vector(X2, n))
    Y = X.dot(W)
    E = Bicomplex(D1, D2) - Y
    E1, E2 = E.z1, E.z2
    c1, c2 = X.z1.conj(), X.z2.conj()
    if variant is Algorithm.BLMS1_CART:
        new1 = W.z1 + 2 * mu * (E1 * c1 + E2 * c2)
        new2 = W.z2 + 2 * mu * (E2 * c1 - E1 * c2)
    elif variant is Algorithm.BLMS2_CART:
        new1 = W.z1 + 2 * mu * (E1 * c1 - E2 * c2)
        new2 = W.z2 + 2 * mu * (E2 * c1 + E1 * c2)
    else:
        raise ValueError(f"not a Cartesian variant: {variant.value}")
    return StepRecord(Y, E, E.norm_sq()), new1, new2


def loss(E: Bicomplex | Iterable[Bicomplex]) -> float:
    """Squared Euclidean norm of an error, or the sum over a sequence of errors."""
    if isinstance(E, Bicomplex):
        return E.norm_sq()
    if isinstance(E, (int, float, complex)):
        return abs(E) ** 2
    return float(sum(loss(e) for e in E))


class AdaptiveFilter:
    """Uniform stepping interface over every :class:`Algorithm`.

    Inputs and desired values are always given as bicomplex data and the
    weights are always reported as a :class:`BicomplexVector`; each variant
    converts to and from its own representation internally.  ``CLMS`` only
    sees the ``C(i)`` component ``z1`` of its data.
    """

    def __init__(self, algorithm, taps: int, mu: float, w0: BicomplexVector | None = None):
        self.algorithm = Algorithm.parse(algorithm)
        if taps < 1:
            raise ValueError("taps must be >= 1")
        self.mu = _check_mu(mu)
        w0 = BicomplexVector.zeros(taps) if w0 is None else w0
        if len(w0) != taps:
            raise DimensionError(f"initial weights have length {len(w0)}, expected {taps}")
        self.taps = taps
        algo = self.algorithm
        if algo in (Algorithm.BLMS1, Algorithm.BLMS2):
            self._state = FilterState(w0, mu)
        elif algo is Algorithm.CLMS:
            self._state = ComplexFilterState(w0.z1, mu)
        elif algo in (Algorithm.BLMS1_SPLIT, Algorithm.BLMS2_SPLIT):
            l1, l2 = w0.to_idempotent()
            self._state = (ComplexFilterState(l1, mu), ComplexFilterState(l2, mu))
        else:
            self._state = (w0.z1.copy(), w0.z2.copy())
        self.step_count = 0

    @property
    def state(self):
        """The variant's native state."""
        return self._state

    @property
    def weights(self) -> BicomplexVector:
        algo = self.algorithm
        if algo in (Algorithm.BLMS1, Algorithm.BLMS2):
            return self._state.W
        if algo is Algorithm.CLMS:
            return BicomplexVector(self._state.w)
        if algo in (Algorithm.BLMS1_SPLIT, Algorithm.BLMS2_SPLIT):
            s1, s2 = self._state
            return BicomplexVector.from_idempotent(s1.w, s2.w)
        return BicomplexVector(*self._state)

    def step(self, X: BicomplexVector, D: Bicomplex) -> StepRecord:
        algo = self.algorithm
        if algo is Algorithm.BLMS1:
            rec, self._state = blms1_step(self._state, X, D)
        elif algo is Algorithm.BLMS2:
            rec, self._state = blms2_step(self._state, X, D)
        elif algo is Algorithm.CLMS:
            r, self._state = clms_step(self._state, X.z1, D.z1)
            rec = StepRecord(Bicomplex(r.y), Bicomplex(r.e), r.sq_error)
        elif algo in (Algorithm.BLMS1_SPLIT, Algorithm.BLMS2_SPLIT):
            step = blms1_split_step if algo is Algorithm.BLMS1_SPLIT else blms2_split_step
            (r1, r2), self._state = step(*self._state, X.to_idempotent(), D.idempotent())
            E = Bicomplex.from_idempotent(r1.e, r2.e)
            rec = StepRecord(Bicomplex.from_idempotent(r1.y, r2.y), E, E.norm_sq())
        else:
            W1, W2 = self._state
            rec, W1, W2 = blms_cartesian_step(algo, W1, W2, X.z1, X.z2, D.z1, D.z2, self.mu)
            self._state = (W1, W2)
        self.step_count += 1
        return rec
