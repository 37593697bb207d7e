"""
Uniform periodic 2D grid, field containers, and second-order discrete operators.

Arrays are indexed ``[iy, ix]``: axis 1 is the x direction (x fastest in
memory), axis 0 is the y direction.  Sample (ix, iy) sits at the point
``(ix * h, iy * h)`` and all stencils wrap periodically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, FieldDomainError

__all__ = [
    "Grid",
    "ScalarField",
    "ComplexField",
    "VectorField",
    "make_grid",
    "gradient",
    "divergence",
    "laplacian_c",
    "integrate",
]


@dataclass(frozen=True)
class Grid:
    """Periodic square lattice of side L with n points per axis."""

    L: float
    n: int

    def __post_init__(self):
        if self.L <= 0:
            raise ConfigurationError(f"domain side must be positive, got L={self.L}")
        if self.n < 4:
            raise ConfigurationError(f"need at least 4 points per axis, got n={self.n}")

    @property
    def h(self) -> float:
        return self.L / self.n

    def axis_coords(self) -> np.ndarray:
        """Sample coordinates along one axis: x_i = i*h, i = 0..n-1."""
        return self.h * np.arange(self.n)

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y) coordinate arrays with X[iy, ix] = ix*h, Y[iy, ix] = iy*h."""
        x = self.axis_coords()
        return np.meshgrid(x, x, indexing="xy")


def make_grid(L: float, n: int) -> Grid:
    return Grid(L=float(L), n=int(n))


def _checked(grid: Grid, values, dtype) -> np.ndarray:
    arr = np.asarray(values, dtype=dtype)
    if arr.shape != (grid.n, grid.n):
        raise FieldDomainError(
            f"expected shape {(grid.n, grid.n)}, got {arr.shape}"
        )
    if not np.isfinite(arr).all():
        raise FieldDomainError("field contains non-finite samples")
    return arr


@dataclass(frozen=True)
class ScalarField:
    """Real samples on a grid; value-semantic, never mutated in place."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _checked(self.grid, self.values, np.float64))


@dataclass(frozen=True)
class ComplexField:
    """Complex samples on a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _checked(self.grid, self.values, np.complex128))

    @property
    def re(self) -> np.ndarray:
        return self.values.real

    @property
    def im(self) -> np.ndarray:
        return self.values.imag


@dataclass(frozen=True)
class VectorField:
    """Two-component real vector field on a grid."""

    grid: Grid
    comp_x: np.ndarray
    comp_y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "comp_x", _checked(self.grid, self.comp_x, np.float64))
        object.__setattr__(self, "comp_y", _checked(self.grid, self.comp_y, np.float64))


# Low-level stencils on raw arrays (periodic wrap via roll).  np.roll(u, -1,
# axis=1)[iy, ix] == u[iy, ix+1], so "-1" shifts samples from the right.

def diff_x(u: np.ndarray, h: float) -> np.ndarray:
    """Second-order central difference along x."""
    return (np.roll(u, -1, axis=1) - np.roll(u, 1, axis=1)) / (2.0 * h)


def diff_y(u: np.ndarray, h: float) -> np.ndarray:
    """Second-order central difference along y."""
    return (np.roll(u, -1, axis=0) - np.roll(u, 1, axis=0)) / (2.0 * h)


def lap(u: np.ndarray, h: float) -> np.ndarray:
    """Five-point Laplacian stencil."""
    return (
        np.roll(u, -1, axis=1)
        + np.roll(u, 1, axis=1)
        + np.roll(u, -1, axis=0)
        + np.roll(u, 1, axis=0)
        - 4.0 * u
    ) / (h * h)


def gradient(f: ScalarField) -> VectorField:
    h = f.grid.h
    return VectorField(f.grid, diff_x(f.values, h), diff_y(f.values, h))


def divergence(w: VectorField) -> ScalarField:
    h = w.grid.h
    return ScalarField(w.grid, diff_x(w.comp_x, h) + diff_y(w.comp_y, h))


def laplacian_c(f: ComplexField) -> ComplexField:
    return ComplexField(f.grid, lap(f.values, f.grid.h))


def integrate(f: ScalarField) -> float:
    """Rectangle-rule quadrature; on a periodic grid this is the trapezoid rule."""
    return f.grid.h ** 2 * float(np.sum(f.values))
