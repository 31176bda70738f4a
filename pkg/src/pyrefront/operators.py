"""Finite-difference operators on ghosted fields.

Every operator reads a Field whose ghosts are already filled and returns
plain interior-shaped ndarrays (tendencies never need ghost values), so a
step is a sequence of independent per-cell computations.
"""

from __future__ import annotations

import numpy as np

from .fields import Field, Grid

WENO_EPS_REL = 1e-6   # smoothness regularization, relative to field scale
WENO_EPS_ABS = 1e-40  # floor so constant fields stay well defined


def _shifted(data: np.ndarray, grid: Grid, axis: int, offset: int) -> np.ndarray:
    """Interior-shaped view shifted along one axis by a whole cell count."""
    g = grid.nghost
    sl = []
    for a, n in enumerate(grid.shape):
        lo = g + (offset if a == axis else 0)
        sl.append(slice(lo, lo + n))
    return data[tuple(sl)]


def gradient_central(f: Field) -> tuple[np.ndarray, ...]:
    """Second-order central gradient, one interior array per axis."""
    grid = f.grid
    out = []
    for axis in range(grid.dim):
        plus = _shifted(f.data, grid, axis, +1)
        minus = _shifted(f.data, grid, axis, -1)
        out.append((plus - minus) / (2.0 * grid.spacing[axis]))
    return tuple(out)


def terrain_gradient(z: Field) -> tuple[np.ndarray, ...]:
    """Slope field of the terrain elevation (central differences)."""
    return gradient_central(z)


def diffusion_variable_K(T: Field, K: Field) -> np.ndarray:
    """Conservative divergence of K*grad(T) with arithmetic-mean face values.

    Per axis: flux_(i+1/2) = 0.5*(K_i + K_(i+1)) * (T_(i+1) - T_i)/dx, and
    the cell value is the difference of its two face fluxes over dx.
    """
    grid = T.grid
    if K.grid != grid:
        raise ValueError("temperature and diffusivity fields must share a grid")
    out = np.zeros(grid.shape)
    for axis in range(grid.dim):
        dx = grid.spacing[axis]
        t0 = _shifted(T.data, grid, axis, 0)
        tp = _shifted(T.data, grid, axis, +1)
        tm = _shifted(T.data, grid, axis, -1)
        k0 = _shifted(K.data, grid, axis, 0)
        kp = _shifted(K.data, grid, axis, +1)
        km = _shifted(K.data, grid, axis, -1)
        flux_hi = 0.5 * (k0 + kp) * (tp - t0)
        flux_lo = 0.5 * (km + k0) * (t0 - tm)
        out += (flux_hi - flux_lo) / (dx * dx)
    return out


def _velocity_components(velocity, dim: int):
    if np.isscalar(velocity):
        if dim != 1:
            raise ValueError("scalar velocity only valid on 1D grids")
        return (velocity,)
    if len(velocity) != dim:
        raise ValueError(f"velocity has {len(velocity)} components, grid is {dim}D")
    return tuple(velocity)


def advect_upwind(f: Field, velocity) -> np.ndarray:
    """Donor-cell upwind evaluation of the non-conservative term v . grad(f)."""
    grid = f.grid
    components = _velocity_components(velocity, grid.dim)
    out = np.zeros(grid.shape)
    for axis, v in enumerate(components):
        v = np.asarray(v, dtype=float)
        dx = grid.spacing[axis]
        f0 = _shifted(f.data, grid, axis, 0)
        dminus = (f0 - _shifted(f.data, grid, axis, -1)) / dx
        dplus = (_shifted(f.data, grid, axis, +1) - f0) / dx
        out += np.maximum(v, 0.0) * dminus + np.minimum(v, 0.0) * dplus
    return out


def _weno5_face(fm2, fm1, f0, fp1, fp2, eps: float, linear_weights: bool):
    """Upwind-biased fifth-order reconstruction of the value at face i+1/2
    from the five cells i-2..i+2 (Jiang-Shu weights)."""
    p0 = (2.0 * fm2 - 7.0 * fm1 + 11.0 * f0) / 6.0
    p1 = (-fm1 + 5.0 * f0 + 2.0 * fp1) / 6.0
    p2 = (2.0 * f0 + 5.0 * fp1 - fp2) / 6.0
    if linear_weights:
        return 0.1 * p0 + 0.6 * p1 + 0.3 * p2
    b0 = 13.0 / 12.0 * (fm2 - 2.0 * fm1 + f0) ** 2 + 0.25 * (fm2 - 4.0 * fm1 + 3.0 * f0) ** 2
    b1 = 13.0 / 12.0 * (fm1 - 2.0 * f0 + fp1) ** 2 + 0.25 * (fm1 - fp1) ** 2
    b2 = 13.0 / 12.0 * (f0 - 2.0 * fp1 + fp2) ** 2 + 0.25 * (3.0 * f0 - 4.0 * fp1 + fp2) ** 2
    a0 = 0.1 / (b0 + eps) ** 2
    a1 = 0.6 / (b1 + eps) ** 2
    a2 = 0.3 / (b2 + eps) ** 2
    return (a0 * p0 + a1 * p1 + a2 * p2) / (a0 + a1 + a2)


def _face_view(data: np.ndarray, grid: Grid, axis: int, offset: int) -> np.ndarray:
    """View of the cells at (face index - 1 + offset) for all n+1 interior
    faces along `axis` (face j sits between cells j-1 and j)."""
    g = grid.nghost
    sl = []
    for a, n in enumerate(grid.shape):
        if a == axis:
            lo = g - 1 + offset
            sl.append(slice(lo, lo + n + 1))
        else:
            sl.append(slice(g, g + n))
    return data[tuple(sl)]


def weno5_derivative(f: Field, axis: int, bias: int, linear_weights: bool = False) -> np.ndarray:
    """One-sided fifth-order WENO approximation of df/dx at cell centers.

    bias +1 leans the stencil to the left (use when the wind blows toward
    +axis), bias -1 mirrors it. Needs three ghost layers.
    """
    grid = f.grid
    if grid.nghost < 3:
        raise ValueError("weno5 needs a ghost width of at least 3")
    if bias not in (-1, +1):
        raise ValueError("bias must be +1 or -1")
    scale = float(np.max(np.abs(f.data)))
    eps = WENO_EPS_REL * scale * scale + WENO_EPS_ABS
    if bias == +1:
        cells = [_face_view(f.data, grid, axis, o) for o in (-2, -1, 0, 1, 2)]
    else:
        # mirror image: right-biased face value reuses the same formula on
        # the reversed cell sequence
        cells = [_face_view(f.data, grid, axis, o) for o in (3, 2, 1, 0, -1)]
    faces = _weno5_face(*cells, eps=eps, linear_weights=linear_weights)
    lo = [slice(None)] * grid.dim
    hi = [slice(None)] * grid.dim
    lo[axis] = slice(0, grid.shape[axis])
    hi[axis] = slice(1, grid.shape[axis] + 1)
    return (faces[tuple(hi)] - faces[tuple(lo)]) / grid.spacing[axis]


def advect_weno5(f: Field, velocity, linear_weights: bool = False) -> np.ndarray:
    """Fifth-order WENO evaluation of v . grad(f), upwind-biased per cell."""
    grid = f.grid
    components = _velocity_components(velocity, grid.dim)
    out = np.zeros(grid.shape)
    for axis, v in enumerate(components):
        v = np.asarray(v, dtype=float)
        if np.all(v == 0.0):
            continue
        dminus = weno5_derivative(f, axis, +1, linear_weights)
        dplus = weno5_derivative(f, axis, -1, linear_weights)
        out += np.maximum(v, 0.0) * dminus + np.minimum(v, 0.0) * dplus
    return out
