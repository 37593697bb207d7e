"""
The semiclassical unknown (complex amplitude, velocity), its quadratic
observables, and the three conserved functionals the projections enforce.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import FieldDomainError
from .grid import (
    ComplexField,
    ScalarField,
    VectorField,
    diff_x,
    diff_y,
    integrate,
)

__all__ = [
    "SemiclassicalState",
    "Invariants",
    "ConstraintRatios",
    "position_density",
    "current_density",
    "mass",
    "momentum",
    "energy",
    "invariants",
]


@dataclass(frozen=True)
class SemiclassicalState:
    """Amplitude/velocity pair at one time instant.

    eps = 0 selects the symmetrized Euler limit system: the dispersive
    term and the eps-part of the current vanish identically.
    """

    a: ComplexField
    v: VectorField
    t: float
    eps: float

    def __post_init__(self):
        if self.a.grid != self.v.grid:
            raise FieldDomainError("amplitude and velocity live on different grids")
        if self.eps < 0:
            raise FieldDomainError(f"eps must be non-negative, got {self.eps}")

    @property
    def grid(self):
        return self.a.grid

    def with_time(self, t: float) -> "SemiclassicalState":
        return replace(self, t=t)


@dataclass(frozen=True)
class Invariants:
    """Mass, energy, and the two momentum components of a state."""

    i1: float
    i2: float
    i3: tuple[float, float]


@dataclass(frozen=True)
class ConstraintRatios:
    """Current invariants relative to their initial values (J ratios).

    Momentum entries are raw ratios; they are meaningless when the initial
    momentum component is (numerically) zero, which the guard flags.
    """

    j1: float
    j2: float
    j3: tuple[float, float]


def position_density(s: SemiclassicalState) -> ScalarField:
    return ScalarField(s.grid, s.a.re ** 2 + s.a.im ** 2)


def current_density(s: SemiclassicalState) -> VectorField:
    """rho*v plus the eps-order quantum correction Im(conj(a) grad a)."""
    h = s.grid.h
    a1, a2 = s.a.re, s.a.im
    rho = a1 * a1 + a2 * a2
    jx = rho * s.v.comp_x
    jy = rho * s.v.comp_y
    if s.eps != 0.0:
        jx = jx + s.eps * (a1 * diff_x(a2, h) - a2 * diff_x(a1, h))
        jy = jy + s.eps * (a1 * diff_y(a2, h) - a2 * diff_y(a1, h))
    return VectorField(s.grid, jx, jy)


def mass(s: SemiclassicalState) -> float:
    return integrate(position_density(s))


def momentum(s: SemiclassicalState) -> tuple[float, float]:
    j = current_density(s)
    h2 = s.grid.h ** 2
    return (h2 * float(np.sum(j.comp_x)), h2 * float(np.sum(j.comp_y)))


def energy(s: SemiclassicalState) -> float:
    """Integral of |eps*grad(a) + i*a*v|^2 + rho^2.

    The modulus is expanded per vector component j as
    (eps*d_j a1 - a2*v_j)^2 + (eps*d_j a2 + a1*v_j)^2.
    """
    h = s.grid.h
    a1, a2 = s.a.re, s.a.im
    eps = s.eps
    rho = a1 * a1 + a2 * a2
    integrand = rho * rho
    for dop, vj in ((diff_x, s.v.comp_x), (diff_y, s.v.comp_y)):
        real_part = eps * dop(a1, h) - a2 * vj
        imag_part = eps * dop(a2, h) + a1 * vj
        integrand = integrand + real_part ** 2 + imag_part ** 2
    return h ** 2 * float(np.sum(integrand))


def invariants(s: SemiclassicalState) -> Invariants:
    return Invariants(i1=mass(s), i2=energy(s), i3=momentum(s))
