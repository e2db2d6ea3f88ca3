"""Bicomplex numbers, vectors and matrices.

A bicomplex number ``Z = x1 + i x2 + j x3 + k x4`` is stored as the pair of
``C(i)`` components ``(z1, z2)`` with ``Z = z1 + j z2``.  The units satisfy
``i**2 = j**2 = -1``, ``k = ij = ji`` and ``k**2 = +1``.

Multiplication goes through the idempotent representation
``Z = l1 e1 + l2 e2`` with ``e1 = (1 + k)/2``, ``e2 = (1 - k)/2``, where the
product is componentwise.  The Cartesian expansion is kept as
:func:`mul_cartesian` and only used as an independent check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "Bicomplex", "BicomplexVector", "BicomplexMatrix", "IdempotentPair",
    "HyperbolicNorm", "ZeroDivisorError", "DimensionError",
    "ZERO", "ONE", "I", "J", "K", "E1", "E2", "ZERO_DIVISOR_RTOL",
    "to_idempotent", "from_idempotent", "add", "mul", "mul_cartesian",
    "inverse", "conj_bar", "conj_dagger", "conj_star", "norm_euclid",
    "norm_hyperbolic", "finsler_pow4", "finsler_product", "dot", "matvec",
    "conj_vec", "scale_add",
]

# relative threshold on min(|l1|, |l2|) below which Z counts as a zero divisor
ZERO_DIVISOR_RTOL = 1e-13

CONJUGATIONS = ("bar", "dagger", "star")


class ZeroDivisorError(ZeroDivisionError):
    """Raised when inverting a bicomplex number on the zero-divisor cone."""


class DimensionError(ValueError):
    """Raised on vector/matrix length mismatches."""


def _as_complex(value, name: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


class Bicomplex:
    """Immutable bicomplex scalar ``z1 + j z2``.

    Plain Python numbers (int, float, complex) mix in as elements of
    ``C(i)``, i.e. as ``z1`` with ``z2 = 0``.
    """

    __slots__ = ("_z1", "_z2")

    def __init__(self, z1=0.0, z2=0.0):
        object.__setattr__(self, "_z1", _as_complex(z1, "z1"))
        object.__setattr__(self, "_z2", _as_complex(z2, "z2"))

    def __setattr__(self, name, value):
        raise AttributeError("Bicomplex is immutable")

    @classmethod
    def from_complex_pair(cls, z1, z2) -> Bicomplex:
        return cls(z1, z2)

    @classmethod
    def from_coords(cls, x1, x2=0.0, x3=0.0, x4=0.0) -> Bicomplex:
        """Build ``x1 + i x2 + j x3 + k x4``."""
        return cls(complex(x1, x2), complex(x3, x4))

    @classmethod
    def from_idempotent(cls, l1, l2) -> Bicomplex:
        l1 = complex(l1)
        l2 = complex(l2)
        return cls((l1 + l2) / 2, 1j * (l1 - l2) / 2)

    @property
    def z1(self) -> complex:
        return self._z1

    @property
    def z2(self) -> complex:
        return self._z2

    @property
    def x1(self) -> float:
        return self._z1.real

    @property
    def x2(self) -> float:
        return self._z1.imag

    @property
    def x3(self) -> float:
        return self._z2.real

    @property
    def x4(self) -> float:
        return self._z2.imag

    def coords(self) -> tuple[float, float, float, float]:
        """The serialization order ``(x1, x2, x3, x4)``."""
        return (self._z1.real, self._z1.imag, self._z2.real, self._z2.imag)

    def idempotent(self) -> tuple[complex, complex]:
        return (self._z1 - 1j * self._z2, self._z1 + 1j * self._z2)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Bicomplex | None:
        if isinstance(other, Bicomplex):
            return other
        if isinstance(other, Number) and not isinstance(other, bool):
            return Bicomplex(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Bicomplex(self._z1 + other._z1, self._z2 + other._z2)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Bicomplex(self._z1 - other._z1, self._z2 - other._z2)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> Bicomplex:
        return Bicomplex(-self._z1, -self._z2)

    def __pos__(self) -> Bicomplex:
        return self

    def __mul__(self, other):
        if isinstance(other, BicomplexVector):
            return NotImplemented
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a1, a2 = self.idempotent()
        b1, b2 = other.idempotent()
        return Bicomplex.from_idempotent(a1 * b1, a2 * b2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> Bicomplex:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        a1, a2 = self.idempotent()
        return Bicomplex.from_idempotent(a1 ** n, a2 ** n)

    def inverse(self) -> Bicomplex:
        """Multiplicative inverse, computed componentwise in idempotent form.

        Raises:
            ZeroDivisorError: if ``min(|l1|, |l2|) <= 1e-13 * max(1, ||Z||)``.
        """
        l1, l2 = self.idempotent()
        if min(abs(l1), abs(l2)) <= ZERO_DIVISOR_RTOL * max(1.0, self.norm()):
            raise ZeroDivisorError(f"{self!r} is a zero divisor (l1={l1}, l2={l2})")
        return Bicomplex.from_idempotent(1 / l1, 1 / l2)

    # -- conjugations -----------------------------------------------------

    def conj_bar(self) -> Bicomplex:
        return Bicomplex(self._z1.conjugate(), self._z2.conjugate())

    def conj_dagger(self) -> Bicomplex:
        return Bicomplex(self._z1, -self._z2)

    def conj_star(self) -> Bicomplex:
        return Bicomplex(self._z1.conjugate(), -self._z2.conjugate())

    def conj(self, mode: str) -> Bicomplex:
        if mode == "bar":
            return self.conj_bar()
        if mode == "dagger":
            return self.conj_dagger()
        if mode == "star":
            return self.conj_star()
        raise ValueError(f"unknown conjugation {mode!r}; expected one of {CONJUGATIONS}")

    # -- norms ------------------------------------------------------------

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def norm_sq(self) -> float:
        z1, z2 = self._z1, self._z2
        return z1.real * z1.real + z1.imag * z1.imag + z2.real * z2.real + z2.imag * z2.imag

    def __abs__(self) -> float:
        return self.norm()

    # -- comparison / display --------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._z1 == other._z1 and self._z2 == other._z2

    def __hash__(self):
        return hash((self._z1, self._z2))

    def isclose(self, other, atol: float = 1e-12) -> bool:
        return (self - other).norm() <= atol

    def __repr__(self):
        return "Bicomplex({!r}, {!r}, {!r}, {!r})".format(*self.coords())

    def __str__(self):
        x1, x2, x3, x4 = self.coords()
        return f"({x1:g} {x2:+g}i {x3:+g}j {x4:+g}k)"

    def __reduce__(self):
        return (Bicomplex, (self._z1, self._z2))


ZERO = Bicomplex(0.0)
ONE = Bicomplex(1.0)
I = Bicomplex(1j)
J = Bicomplex(0.0, 1.0)
K = Bicomplex(0.0, 1j)
E1 = Bicomplex.from_idempotent(1.0, 0.0)
E2 = Bicomplex.from_idempotent(0.0, 1.0)


@dataclass(frozen=True)
class IdempotentPair:
    """Coefficients ``(l1, l2)`` of ``e1`` and ``e2``."""

    l1: complex
    l2: complex

    def __post_init__(self):
        object.__setattr__(self, "l1", _as_complex(self.l1, "l1"))
        object.__setattr__(self, "l2", _as_complex(self.l2, "l2"))

    def __add__(self, other: IdempotentPair) -> IdempotentPair:
        return IdempotentPair(self.l1 + other.l1, self.l2 + other.l2)

    def __mul__(self, other: IdempotentPair) -> IdempotentPair:
        return IdempotentPair(self.l1 * other.l1, self.l2 * other.l2)

    def to_bicomplex(self) -> Bicomplex:
        return Bicomplex.from_idempotent(self.l1, self.l2)


class HyperbolicNorm(NamedTuple):
    """``m1 e1 + m2 e2`` with ``m1, m2 >= 0``."""

    m1: float
    m2: float

    def __mul__(self, other):
        if isinstance(other, HyperbolicNorm):
            return HyperbolicNorm(self.m1 * other.m1, self.m2 * other.m2)
        return NotImplemented


# -- scalar operations ----------------------------------------------------

def to_idempotent(Z: Bicomplex) -> IdempotentPair:
    return IdempotentPair(*Z.idempotent())


def from_idempotent(P: IdempotentPair) -> Bicomplex:
    return P.to_bicomplex()


def add(Z: Bicomplex, W: Bicomplex) -> Bicomplex:
    return Z + W


def mul(Z: Bicomplex, W: Bicomplex) -> Bicomplex:
    return Z * W


def mul_cartesian(Z: Bicomplex, W: Bicomplex) -> Bicomplex:
    """Product from the 16-term expansion over ``1, i, j, k``.

    Independent of the idempotent route used by :func:`mul`.
    """
    a1, a2, a3, a4 = Z.coords()
    b1, b2, b3, b4 = W.coords()
    # i*i = j*j = -1, k*k = +1, ij = k, ik = -j, jk = -i
    return Bicomplex.from_coords(
        a1 * b1 - a2 * b2 - a3 * b3 + a4 * b4,
        a1 * b2 + a2 * b1 - a3 * b4 - a4 * b3,
        a1 * b3 + a3 * b1 - a2 * b4 - a4 * b2,
        a1 * b4 + a4 * b1 + a2 * b3 + a3 * b2,
    )


def inverse(Z: Bicomplex) -> Bicomplex:
    return Z.inverse()


def conj_bar(Z: Bicomplex) -> Bicomplex:
    return Z.conj_bar()


def conj_dagger(Z: Bicomplex) -> Bicomplex:
    return Z.conj_dagger()


def conj_star(Z: Bicomplex) -> Bicomplex:
    return Z.conj_star()


def norm_euclid(Z: Bicomplex) -> float:
    return Z.norm()


def norm_hyperbolic(Z: Bicomplex) -> HyperbolicNorm:
    l1, l2 = Z.idempotent()
    return HyperbolicNorm(abs(l1), abs(l2))


def finsler_pow4(Z: Bicomplex) -> float:
    """Fourth power of the Finsler-type norm, ``|l1|**2 * |l2|**2``."""
    m1, m2 = norm_hyperbolic(Z)
    return (m1 * m1) * (m2 * m2)


def finsler_product(Z: Bicomplex) -> Bicomplex:
    """``Z * conj_bar(Z) * conj_star(Z) * conj_dagger(Z)`` as a bicomplex product."""
    return Z * Z.conj_bar() * Z.conj_star() * Z.conj_dagger()


# -- vectors ----------------------------------------------------------------

def _as_component_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, ndmin=1)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.flags.writeable = False
    return arr


class BicomplexVector:
    """Fixed-length vector over the bicomplex numbers.

    Backed by two read-only ``complex128`` arrays ``z1`` and ``z2`` so that
    elementwise work is vectorized.  Indexing returns :class:`Bicomplex`.
    """

    __slots__ = ("z1", "z2")

    def __init__(self, z1, z2=None):
        z1 = _as_component_array(z1, "z1")
        if z2 is None:
            z2 = np.zeros_like(z1)
            z2.flags.writeable = False
        else:
            z2 = _as_component_array(z2, "z2")
        if z1.shape != z2.shape:
            raise DimensionError(f"component lengths differ: {len(z1)} != {len(z2)}")
        if len(z1) < 1:
            raise DimensionError("a bicomplex vector needs at least one element")
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "z2", z2)

    def __setattr__(self, name, value):
        raise AttributeError("BicomplexVector is immutable")

    @classmethod
    def from_elements(cls, elems: Iterable[Bicomplex]) -> BicomplexVector:
        elems = [e if isinstance(e, Bicomplex) else Bicomplex(e) for e in elems]
        return cls([e.z1 for e in elems], [e.z2 for e in elems])

    @classmethod
    def from_coords(cls, coords) -> BicomplexVector:
        """From an ``(n, 4)`` array of ``(x1, x2, x3, x4)`` rows."""
        c = np.asarray(coords, dtype=np.float64)
        if c.ndim != 2 or c.shape[1] != 4:
            raise DimensionError(f"expected shape (n, 4), got {c.shape}")
        return cls(c[:, 0] + 1j * c[:, 1], c[:, 2] + 1j * c[:, 3])

    @classmethod
    def from_idempotent(cls, l1, l2) -> BicomplexVector:
        l1 = np.asarray(l1, dtype=np.complex128)
        l2 = np.asarray(l2, dtype=np.complex128)
        return cls((l1 + l2) / 2, 1j * (l1 - l2) / 2)

    @classmethod
    def zeros(cls, n: int) -> BicomplexVector:
        return cls(np.zeros(n, dtype=np.complex128))

    def to_idempotent(self) -> tuple[np.ndarray, np.ndarray]:
        return self.z1 - 1j * self.z2, self.z1 + 1j * self.z2

    def coords(self) -> np.ndarray:
        return np.stack([self.z1.real, self.z1.imag, self.z2.real, self.z2.imag], axis=1)

    def __len__(self):
        return len(self.z1)

    def __getitem__(self, k: int) -> Bicomplex:
        return Bicomplex(self.z1[k], self.z2[k])

    def __iter__(self):
        for a, b in zip(self.z1, self.z2):
            yield Bicomplex(a, b)

    def _check_len(self, other: BicomplexVector) -> None:
        if len(self) != len(other):
            raise DimensionError(f"length mismatch: {len(self)} != {len(other)}")

    def __add__(self, other):
        if not isinstance(other, BicomplexVector):
            return NotImplemented
        self._check_len(other)
        return BicomplexVector(self.z1 + other.z1, self.z2 + other.z2)

    def __sub__(self, other):
        if not isinstance(other, BicomplexVector):
            return NotImplemented
        self._check_len(other)
        return BicomplexVector(self.z1 - other.z1, self.z2 - other.z2)

    def __neg__(self):
        return BicomplexVector(-self.z1, -self.z2)

    def __mul__(self, other):
        """Elementwise product with a vector, or scaling by a scalar."""
        a1, a2 = self.to_idempotent()
        if isinstance(other, BicomplexVector):
            self._check_len(other)
            b1, b2 = other.to_idempotent()
        else:
            other = Bicomplex._coerce(other)
            if other is None:
                return NotImplemented
            b1, b2 = other.idempotent()
        return BicomplexVector.from_idempotent(a1 * b1, a2 * b2)

    __rmul__ = __mul__

    def conj(self, mode: str) -> BicomplexVector:
        if mode == "bar":
            return BicomplexVector(self.z1.conj(), self.z2.conj())
        if mode == "dagger":
            return BicomplexVector(self.z1, -self.z2)
        if mode == "star":
            return BicomplexVector(self.z1.conj(), -self.z2.conj())
        raise ValueError(f"unknown conjugation {mode!r}; expected one of {CONJUGATIONS}")

    def dot(self, other: BicomplexVector) -> Bicomplex:
        """Unconjugated ``sum_k self[k] * other[k]``."""
        self._check_len(other)
        a1, a2 = self.to_idempotent()
        b1, b2 = other.to_idempotent()
        return Bicomplex.from_idempotent(np.dot(a1, b1), np.dot(a2, b2))

    def norm_sq(self) -> float:
        """Sum of squared Euclidean norms of the entries."""
        return float(np.sum(self.z1.real ** 2 + self.z1.imag ** 2
                            + self.z2.real ** 2 + self.z2.imag ** 2))

    def replace(self, k: int, value: Bicomplex) -> BicomplexVector:
        z1 = self.z1.copy()
        z2 = self.z2.copy()
        z1[k] = value.z1
        z2[k] = value.z2
        return BicomplexVector(z1, z2)

    def __eq__(self, other):
        if not isinstance(other, BicomplexVector):
            return NotImplemented
        return bool(np.array_equal(self.z1, other.z1) and np.array_equal(self.z2, other.z2))

    __hash__ = None

    def __repr__(self):
        return f"BicomplexVector({list(self)!r})"


class BicomplexMatrix:
    """Square ``n x n`` bicomplex matrix backed by two complex arrays."""

    __slots__ = ("z1", "z2")

    def __init__(self, z1, z2=None):
        z1 = np.array(z1, dtype=np.complex128)
        z2 = np.zeros_like(z1) if z2 is None else np.array(z2, dtype=np.complex128)
        if z1.ndim != 2 or z1.shape[0] != z1.shape[1] or z1.shape != z2.shape:
            raise DimensionError(f"expected two matching square arrays, got {z1.shape} and {z2.shape}")
        if z1.shape[0] < 1:
            raise DimensionError("matrix must be at least 1x1")
        if not (np.all(np.isfinite(z1)) and np.all(np.isfinite(z2))):
            raise ValueError("matrix entries must be finite")
        z1.flags.writeable = False
        z2.flags.writeable = False
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "z2", z2)

    def __setattr__(self, name, value):
        raise AttributeError("BicomplexMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> BicomplexMatrix:
        return cls(np.eye(n, dtype=np.complex128))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Bicomplex]]) -> BicomplexMatrix:
        return cls([[e.z1 for e in r] for r in rows], [[e.z2 for e in r] for r in rows])

    @property
    def n(self) -> int:
        return self.z1.shape[0]

    def __getitem__(self, idx) -> Bicomplex:
        r, c = idx
        return Bicomplex(self.z1[r, c], self.z2[r, c])

    def to_idempotent(self) -> tuple[np.ndarray, np.ndarray]:
        return self.z1 - 1j * self.z2, self.z1 + 1j * self.z2

    def transpose(self) -> BicomplexMatrix:
        return BicomplexMatrix(self.z1.T, self.z2.T)

    def matvec(self, v: BicomplexVector) -> BicomplexVector:
        if len(v) != self.n:
            raise DimensionError(f"matrix is {self.n}x{self.n} but vector has length {len(v)}")
        a1, a2 = self.to_idempotent()
        b1, b2 = v.to_idempotent()
        return BicomplexVector.from_idempotent(a1 @ b1, a2 @ b2)

    def __matmul__(self, v):
        if isinstance(v, BicomplexVector):
            return self.matvec(v)
        return NotImplemented


def dot(X: BicomplexVector, W: BicomplexVector) -> Bicomplex:
    return X.dot(W)


def matvec(R: BicomplexMatrix, Z: BicomplexVector) -> BicomplexVector:
    return R.matvec(Z)


def conj_vec(v: BicomplexVector, mode: str) -> BicomplexVector:
    return v.conj(mode)


def scale_add(W: BicomplexVector, s: Bicomplex, V: BicomplexVector) -> BicomplexVector:
    """``W + s * V`` elementwise."""
    return W + V * s
