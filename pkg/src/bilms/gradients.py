"""Finite-difference Wirtinger and bicomplex (BCR) derivative operators.

Every operator here is evaluated numerically from real-coordinate central
differences, so it can serve as an oracle for closed-form learning rules.

Bicomplex operators take the form::

    D f = c * (s1 df/dx1 + s2 i df/dx2 + s3 j df/dx3 + s4 k df/dx4)

with the sign pattern ``(s1, s2, s3, s4)`` chosen per :class:`PartialKind`
and the normalization ``c`` taken from :class:`FDConfig`.  With the default
``c = 1/2`` each operator maps its own conjugate variable to ``4c = 2``
(e.g. ``D_ZSTAR(Z*) = 2``) and annihilates the other three.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bicomplex import E1, E2, I, J, K, Bicomplex, BicomplexVector

__all__ = [
    "PartialKind", "FDConfig", "DEFAULT_FD", "wirtinger", "complex_grad",
    "bc_partial", "grad", "leibniz_residual", "idempotent_partial",
]

ComplexField = Callable[[complex], complex]
ScalarFieldBC = Callable[[BicomplexVector], Bicomplex]


class PartialKind(enum.Enum):
    """The four conjugation-adapted operators and their sign patterns."""

    D_Z = (1, -1, -1, 1)
    D_ZBAR = (1, 1, -1, -1)
    D_ZSTAR = (1, 1, 1, 1)
    D_ZDAGGER = (1, -1, 1, -1)

    @property
    def signs(self) -> tuple[int, int, int, int]:
        return self.value

    @property
    def conjugation(self) -> str | None:
        """Name of the conjugate this operator differentiates against."""
        return _MATCHED_CONJ[self]

    @classmethod
    def parse(cls, name: str) -> PartialKind:
        key = name.upper().replace("-", "_")
        if not key.startswith("D_"):
            key = "D_" + key
        return cls[key]


_MATCHED_CONJ = {
    PartialKind.D_Z: None,
    PartialKind.D_ZBAR: "bar",
    PartialKind.D_ZSTAR: "star",
    PartialKind.D_ZDAGGER: "dagger",
}

_ALLOWED_C = (1.0, 0.5, 0.25)


@dataclass(frozen=True)
class FDConfig:
    """Finite-difference settings.

    Attributes:
        h: base central-difference step.
        c: operator normalization constant, one of 1, 1/2, 1/4.
        scale_h_by_coordinate: use ``h * max(1, |x|)`` per coordinate.
    """

    h: float = 1e-5
    c: float = 0.5
    scale_h_by_coordinate: bool = True

    def __post_init__(self):
        if not (self.h > 0 and np.isfinite(self.h)):
            raise ValueError(f"h must be positive and finite, got {self.h}")
        if self.c not in _ALLOWED_C:
            raise ValueError(f"c must be one of {_ALLOWED_C}, got {self.c}")

    def step_for(self, x: float) -> float:
        if self.scale_h_by_coordinate:
            return self.h * max(1.0, abs(x))
        return self.h


DEFAULT_FD = FDConfig()


def _central(f, x: float, h: float):
    """Central difference of ``f`` at ``x``; uses the representable step."""
    xp = x + h
    xm = x - h
    return (f(xp) - f(xm)) * (1.0 / (xp - xm))


def wirtinger(f: ComplexField, z: complex, which: str = "dz", h: float = 1e-5) -> complex:
    """Wirtinger derivative ``d/dz`` or ``d/dzbar`` of a complex scalar field.

    Computed as ``(df/dx -+ i df/dy) / 2`` from central differences, with
    the step scaled by ``max(1, |coordinate|)``.
    """
    if which not in ("dz", "dzbar"):
        raise ValueError(f"which must be 'dz' or 'dzbar', got {which!r}")
    z = complex(z)
    hx = h * max(1.0, abs(z.real))
    hy = h * max(1.0, abs(z.imag))
    fx = _central(lambda t: complex(f(complex(t, z.imag))), z.real, hx)
    fy = _central(lambda t: complex(f(complex(z.real, t))), z.imag, hy)
    if which == "dz":
        return 0.5 * (fx - 1j * fy)
    return 0.5 * (fx + 1j * fy)


def complex_grad(F: Callable[[np.ndarray], complex], z, which: str = "dz",
                 h: float = 1e-5) -> np.ndarray:
    """Gradient of ``F: C^n -> C`` w.r.t. ``z`` or ``zbar``, one variable at a time."""
    z = np.array(z, dtype=np.complex128)
    out = np.empty_like(z)
    for k in range(len(z)):
        def f_k(t, k=k):
            zz = z.copy()
            zz[k] = t
            return F(zz)
        out[k] = wirtinger(f_k, z[k], which, h)
    return out


def _combine(derivs: list[Bicomplex], kind: PartialKind, c: float) -> Bicomplex:
    s1, s2, s3, s4 = kind.signs
    return c * (s1 * derivs[0] + s2 * (I * derivs[1]) + s3 * (J * derivs[2]) + s4 * (K * derivs[3]))


def _coord_partials(F: ScalarFieldBC, coords: np.ndarray, k: int, cfg: FDConfig) -> list[Bicomplex]:
    """Real partials of ``F`` w.r.t. the four coordinates of entry ``k``."""
    derivs = []
    for m in range(4):
        def f_m(t, m=m):
            c = coords.copy()
            c[k, m] = t
            return F(BicomplexVector.from_coords(c))
        derivs.append(_central(f_m, coords[k, m], cfg.step_for(coords[k, m])))
    return derivs


def grad(F: ScalarFieldBC, Zvec: BicomplexVector, which: PartialKind,
         cfg: FDConfig = DEFAULT_FD) -> BicomplexVector:
    """Bicomplex gradient of ``F`` over a vector variable.

    Entry ``k`` is the operator ``which`` applied to ``F`` as a function of
    ``Zvec[k]`` alone, all other entries frozen.  The result has the shape
    of ``Zvec``.
    """
    coords = Zvec.coords()
    return BicomplexVector.from_elements(
        _combine(_coord_partials(F, coords, k, cfg), which, cfg.c) for k in range(len(Zvec))
    )


def bc_partial(f: Callable[[Bicomplex], Bicomplex], Z: Bicomplex, which: PartialKind,
               cfg: FDConfig = DEFAULT_FD) -> Bicomplex:
    """Apply one of the four bicomplex partial operators to ``f`` at ``Z``."""
    coords = np.array([Z.coords()])
    return _combine(_coord_partials(lambda v: f(v[0]), coords, 0, cfg), which, cfg.c)


def leibniz_residual(f, g, Z: Bicomplex, which: PartialKind, cfg: FDConfig = DEFAULT_FD) -> float:
    """Norm of ``D(fg) - f D(g) - D(f) g`` at ``Z``."""
    fg = bc_partial(lambda w: f(w) * g(w), Z, which, cfg)
    rhs = f(Z) * bc_partial(g, Z, which, cfg) + bc_partial(f, Z, which, cfg) * g(Z)
    return (fg - rhs).norm()


# the idempotent slot (0 -> l1, 1 -> l2) and conjugation paired with e1 and e2
_IDEMPOTENT_FORM = {
    PartialKind.D_Z: ((0, "dz"), (1, "dz")),
    PartialKind.D_ZBAR: ((1, "dzbar"), (0, "dzbar")),
    PartialKind.D_ZSTAR: ((0, "dzbar"), (1, "dzbar")),
    PartialKind.D_ZDAGGER: ((1, "dz"), (0, "dz")),
}


def idempotent_partial(f: Callable[[Bicomplex], Bicomplex], Z: Bicomplex, which: PartialKind,
                       cfg: FDConfig = DEFAULT_FD) -> Bicomplex:
    """Same operator as :func:`bc_partial`, evaluated in idempotent coordinates.

    Writes ``f`` as a function of ``(l1, l2)`` and takes ordinary complex
    Wirtinger differences in each slot.  For ``D_ZSTAR`` this is
    ``4c * (df/dl1bar e1 + df/dl2bar e2)``; the other kinds permute slots
    and conjugations.  Agreement with :func:`bc_partial` checks both the
    sign patterns and the normalization.
    """
    lam = list(Z.idempotent())

    def slot_derivative(slot: int, mode: str) -> Bicomplex:
        def along(axis: int) -> Bicomplex:
            base = lam[slot]
            x = base.real if axis == 0 else base.imag

            def g(t):
                moved = list(lam)
                moved[slot] = complex(t, base.imag) if axis == 0 else complex(base.real, t)
                return f(Bicomplex.from_idempotent(*moved))
            return _central(g, x, cfg.step_for(x))

        da, db = along(0), along(1)
        return 0.5 * (da - I * db) if mode == "dz" else 0.5 * (da + I * db)

    (s1, m1), (s2, m2) = _IDEMPOTENT_FORM[which]
    return 4 * cfg.c * (slot_derivative(s1, m1) * E1 + slot_derivative(s2, m2) * E2)
