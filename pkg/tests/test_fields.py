import numpy as np
import pytest

from pyrefront.fields import (BoundaryCondition, BoundaryKind, Field, FieldState,
                              Grid, fill_ghosts)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(shape=(0,), spacing=(1.0,))
    with pytest.raises(ValueError):
        Grid(shape=(4,), spacing=(-1.0,))
    with pytest.raises(ValueError):
        Grid(shape=(4, 4, 4), spacing=(1.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        Grid(shape=(4,), spacing=(1.0,), nghost=0)


def test_grid_coords_are_cell_centers():
    g = Grid(shape=(4,), spacing=(0.5,), origin=(1.0,))
    assert np.allclose(g.coords(0), [1.25, 1.75, 2.25, 2.75])
    ghosted = g.coords(0, ghosted=True)
    assert ghosted.size == 4 + 2 * g.nghost
    assert ghosted[g.nghost] == 1.25


def test_field_shape_checks():
    g = Grid(shape=(4,), spacing=(1.0,))
    with pytest.raises(ValueError):
        Field(g, np.zeros(4))  # missing ghosts
    f = Field.from_interior(g, np.arange(4.0))
    assert f.interior.shape == (4,)
    assert np.array_equal(f.interior, np.arange(4.0))


def test_field_sample_includes_ghosts():
    g = Grid(shape=(8,), spacing=(0.25,))
    f = Field.sample(g, lambda x: 2.0 * x)
    assert np.allclose(f.data, 2.0 * g.coords(0, ghosted=True))


def test_fill_ghosts_neumann_keeps_constant():
    g = Grid(shape=(5,), spacing=(1.0,))
    f = Field.from_interior(g, np.full(5, 7.0), ghost_value=-1.0)
    fill_ghosts(f, BoundaryCondition.neumann(1))
    assert np.all(f.data == 7.0)


def test_fill_ghosts_dirichlet_constant_ambient_unchanged():
    g = Grid(shape=(5,), spacing=(1.0,))
    f = Field.full(g, 3.0)
    fill_ghosts(f, BoundaryCondition.dirichlet_ambient(1), ambient=3.0)
    assert np.all(f.data == 3.0)


def test_fill_ghosts_neumann_mirror_zeroes_wall_difference():
    # a linear ramp mirrored evenly: the first difference across each wall
    # face must vanish
    g = Grid(shape=(6,), spacing=(1.0,))
    f = Field.from_interior(g, np.arange(6.0))
    fill_ghosts(f, BoundaryCondition.neumann(1))
    gw = g.nghost
    assert f.data[gw - 1] == f.data[gw]
    assert f.data[gw + 6] == f.data[gw + 5]
    # deeper layers mirror deeper interior cells
    assert f.data[gw - 2] == f.data[gw + 1]
    assert f.data[gw - 3] == f.data[gw + 2]


def test_fill_ghosts_2d_mixed_sides():
    g = Grid(shape=(4, 3), spacing=(1.0, 1.0))
    f = Field.from_interior(g, np.arange(12.0).reshape(4, 3))
    bc = BoundaryCondition((BoundaryKind.DIRICHLET_AMBIENT, BoundaryKind.NEUMANN_ZERO_FLUX,
                            BoundaryKind.NEUMANN_ZERO_FLUX, BoundaryKind.NEUMANN_ZERO_FLUX))
    fill_ghosts(f, bc, ambient=-5.0)
    gw = g.nghost
    assert np.all(f.data[0:gw, gw:gw + 3] == -5.0)      # x-lo Dirichlet
    assert f.data[gw + 4, gw] == f.data[gw + 3, gw]     # x-hi mirror
    assert f.data[gw + 1, gw - 1] == f.data[gw + 1, gw]  # y-lo mirror


def test_field_state_requires_matching_grids():
    g1 = Grid(shape=(4,), spacing=(1.0,))
    g2 = Grid(shape=(5,), spacing=(1.0,))
    with pytest.raises(ValueError):
        FieldState(Field.full(g1, 1.0), Field.full(g2, 1.0))
