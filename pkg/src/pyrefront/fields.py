"""Uniform Cartesian grids (1D/2D), ghosted scalar fields, and boundary fills."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np


class BoundaryKind(Enum):
    DIRICHLET_AMBIENT = "dirichlet_ambient"
    NEUMANN_ZERO_FLUX = "neumann"


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centered grid with a fixed ghost-cell rind.

    shape/spacing/origin are per-axis tuples; nghost = 3 covers every
    stencil in use (WENO5 is the widest).
    """

    shape: tuple[int, ...]
    spacing: tuple[float, ...]
    origin: tuple[float, ...] = ()
    nghost: int = 3

    def __post_init__(self) -> None:
        if len(self.shape) not in (1, 2):
            raise ValueError("grid must be 1D or 2D")
        if len(self.spacing) != len(self.shape):
            raise ValueError("grid.spacing must match grid dimension")
        if not self.origin:
            object.__setattr__(self, "origin", (0.0,) * len(self.shape))
        if len(self.origin) != len(self.shape):
            raise ValueError("grid.origin must match grid dimension")
        if any(n < 1 for n in self.shape):
            raise ValueError("grid needs at least one cell per axis")
        if any(not np.isfinite(d) or d <= 0.0 for d in self.spacing):
            raise ValueError("grid spacing must be finite and > 0")
        if self.nghost < 1:
            raise ValueError("grid needs at least one ghost layer")

    @property
    def dim(self) -> int:
        return len(self.shape)

    @property
    def padded_shape(self) -> tuple[int, ...]:
        return tuple(n + 2 * self.nghost for n in self.shape)

    def coords(self, axis: int, ghosted: bool = False) -> np.ndarray:
        """Cell-center coordinates along one axis."""
        n = self.shape[axis]
        idx = np.arange(-self.nghost, n + self.nghost) if ghosted else np.arange(n)
        return self.origin[axis] + (idx + 0.5) * self.spacing[axis]

    def meshgrid(self, ghosted: bool = False) -> tuple[np.ndarray, ...]:
        axes = [self.coords(a, ghosted) for a in range(self.dim)]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    def interior_slices(self) -> tuple[slice, ...]:
        g = self.nghost
        return tuple(slice(g, g + n) for n in self.shape)


@dataclass
class Field:
    """Scalar field on a grid, stored with its ghost cells."""

    grid: Grid
    data: np.ndarray

    def __post_init__(self) -> None:
        self.data = np.asarray(self.data, dtype=float)
        if self.data.shape != self.grid.padded_shape:
            raise ValueError(
                f"field data shape {self.data.shape} does not match "
                f"padded grid shape {self.grid.padded_shape}")

    @classmethod
    def full(cls, grid: Grid, value: float) -> "Field":
        return cls(grid, np.full(grid.padded_shape, float(value)))

    @classmethod
    def from_interior(cls, grid: Grid, values, ghost_value: float = 0.0) -> "Field":
        values = np.asarray(values, dtype=float)
        if values.shape != grid.shape:
            raise ValueError(f"interior shape {values.shape} != grid shape {grid.shape}")
        data = np.full(grid.padded_shape, float(ghost_value))
        data[grid.interior_slices()] = values
        return cls(grid, data)

    @classmethod
    def sample(cls, grid: Grid, fn: Callable) -> "Field":
        """Evaluate fn on cell centers, ghost cells included (handy for tests
        and terrain rasters where analytic ghost values beat extrapolation)."""
        mesh = grid.meshgrid(ghosted=True)
        return cls(grid, np.asarray(fn(*mesh), dtype=float) + np.zeros(grid.padded_shape))

    @property
    def interior(self) -> np.ndarray:
        return self.data[self.grid.interior_slices()]

    def copy(self) -> "Field":
        return Field(self.grid, self.data.copy())


@dataclass(frozen=True)
class BoundaryCondition:
    """One boundary kind per physical side, ordered (lo, hi) per axis."""

    sides: tuple[BoundaryKind, ...]

    @classmethod
    def uniform(cls, kind: BoundaryKind, dim: int) -> "BoundaryCondition":
        return cls((kind,) * (2 * dim))

    @classmethod
    def dirichlet_ambient(cls, dim: int) -> "BoundaryCondition":
        return cls.uniform(BoundaryKind.DIRICHLET_AMBIENT, dim)

    @classmethod
    def neumann(cls, dim: int) -> "BoundaryCondition":
        return cls.uniform(BoundaryKind.NEUMANN_ZERO_FLUX, dim)

    def side(self, axis: int, hi: bool) -> BoundaryKind:
        return self.sides[2 * axis + (1 if hi else 0)]


def _side_slices(grid: Grid, axis: int, hi: bool):
    """(ghost_slab, mirror_slab) index tuples for one side of one axis."""
    g = grid.nghost
    n = grid.shape[axis]
    full = [slice(None)] * grid.dim
    ghost, mirror = list(full), list(full)
    if hi:
        ghost[axis] = slice(g + n, g + n + g)
        mirror[axis] = slice(g + n - g, g + n)
    else:
        ghost[axis] = slice(0, g)
        mirror[axis] = slice(g, 2 * g)
    return tuple(ghost), tuple(mirror)


def fill_ghosts(f: Field, bc: BoundaryCondition, ambient: float = 0.0) -> Field:
    """Populate every ghost layer in place and return the field.

    Dirichlet sides hold the ambient value; Neumann sides mirror the
    interior (even reflection, so the one-sided difference at the wall
    vanishes). Axes are filled in order, which also defines the corners.
    """
    if len(bc.sides) != 2 * f.grid.dim:
        raise ValueError("boundary condition does not match grid dimension")
    for axis in range(f.grid.dim):
        for hi in (False, True):
            ghost, mirror = _side_slices(f.grid, axis, hi)
            if bc.side(axis, hi) is BoundaryKind.DIRICHLET_AMBIENT:
                f.data[ghost] = ambient
            else:
                f.data[ghost] = np.flip(f.data[mirror], axis=axis)
    return f


@dataclass
class FieldState:
    """Prognostic fields: temperature, fuel fraction, optional burn memory."""

    T: Field
    Y: Field
    theta: Optional[Field] = None

    def __post_init__(self) -> None:
        if self.T.grid is not self.Y.grid and self.T.grid != self.Y.grid:
            raise ValueError("temperature and fuel fields must share a grid")
        if self.theta is not None and self.theta.data.shape != self.T.data.shape:
            raise ValueError("memory field shape does not match temperature")

    @property
    def grid(self) -> Grid:
        return self.T.grid

    def copy(self) -> "FieldState":
        return FieldState(self.T.copy(), self.Y.copy(),
                          self.theta.copy() if self.theta is not None else None)
