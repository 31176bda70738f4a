import numpy as np
import pytest

from pyrefront.fields import Field, Grid
from pyrefront.operators import (advect_upwind, advect_weno5, diffusion_variable_K,
                                 gradient_central, terrain_gradient, weno5_derivative)


def grid1d(n, length=2 * np.pi, origin=0.0):
    return Grid(shape=(n,), spacing=(length / n,), origin=(origin,))


def measured_order(errors):
    errors = np.asarray(errors)
    return np.log2(errors[:-1] / errors[1:])


class TestGradientCentral:
    def test_constant_annihilated(self):
        f = Field.full(grid1d(16), 4.2)
        (gx,) = gradient_central(f)
        assert np.all(gx == 0.0)

    def test_exact_on_linear(self):
        g = grid1d(16, length=3.0)
        f = Field.sample(g, lambda x: 2.5 * x)
        (gx,) = gradient_central(f)
        assert np.allclose(gx, 2.5, rtol=1e-13)

    def test_second_order_on_sine(self):
        errors = []
        for n in (32, 64, 128):
            g = grid1d(n)
            f = Field.sample(g, np.sin)
            (gx,) = gradient_central(f)
            errors.append(np.max(np.abs(gx - np.cos(g.coords(0)))))
        assert np.all(measured_order(errors) >= 1.9)

    def test_2d_components(self):
        g = Grid(shape=(8, 8), spacing=(0.5, 0.25))
        f = Field.sample(g, lambda x, y: 3.0 * x - 2.0 * y)
        gx, gy = gradient_central(f)
        assert np.allclose(gx, 3.0) and np.allclose(gy, -2.0)


class TestDiffusionVariableK:
    def test_linear_T_constant_K_annihilated(self):
        g = grid1d(16, length=4.0)
        T = Field.sample(g, lambda x: 5.0 * x + 1.0)
        K = Field.full(g, 2.0)
        out = diffusion_variable_K(T, K)
        assert np.allclose(out, 0.0, atol=1e-12)

    def test_quadratic_exact(self):
        g = grid1d(13, length=5.0)
        T = Field.sample(g, lambda x: x**2)
        K = Field.full(g, 1.0)
        out = diffusion_variable_K(T, K)
        assert np.allclose(out, 2.0, rtol=1e-12)

    def test_linear_K_linear_T_matches_analytic_flux(self):
        # d/dx (x * d/dx x) = 1; arithmetic face means are exact on linears
        g = grid1d(20, length=3.0, origin=1.0)
        T = Field.sample(g, lambda x: x)
        K = Field.sample(g, lambda x: x)
        out = diffusion_variable_K(T, K)
        assert np.allclose(out, 1.0, rtol=1e-12)

    def test_second_order_on_smooth_fields(self):
        errors = []
        for n in (32, 64, 128):
            g = grid1d(n)
            T = Field.sample(g, np.sin)
            K = Field.sample(g, lambda x: 1.5 + np.cos(x))
            out = diffusion_variable_K(T, K)
            x = g.coords(0)
            exact = -np.sin(x) * np.cos(x) - (1.5 + np.cos(x)) * np.sin(x)
            errors.append(np.max(np.abs(out - exact)))
        assert np.all(measured_order(errors) >= 1.9)

    def test_symmetry_preserved(self):
        # even T and K about the domain center give an even result
        g = grid1d(24, length=2.0, origin=-1.0)
        T = Field.sample(g, lambda x: np.cos(np.pi * x))
        K = Field.sample(g, lambda x: 1.0 + x**2)
        out = diffusion_variable_K(T, K)
        assert np.allclose(out, out[::-1], rtol=1e-12, atol=1e-12)

    def test_2d_quadratic_exact(self):
        g = Grid(shape=(9, 7), spacing=(0.5, 0.25))
        T = Field.sample(g, lambda x, y: x**2 + 3.0 * y**2)
        K = Field.full(g, 1.0)
        out = diffusion_variable_K(T, K)
        assert np.allclose(out, 2.0 + 6.0, rtol=1e-12)


class TestUpwind:
    def test_zero_velocity(self):
        g = grid1d(10)
        f = Field.sample(g, np.sin)
        assert np.all(advect_upwind(f, (0.0,)) == 0.0)

    def test_constant_field(self):
        g = grid1d(10)
        f = Field.full(g, 2.0)
        assert np.all(advect_upwind(f, (1.3,)) == 0.0)

    def test_exact_on_linear(self):
        g = grid1d(10, length=2.0)
        f = Field.sample(g, lambda x: x)
        out = advect_upwind(f, (1.0,))
        assert np.allclose(out, 1.0, rtol=1e-13)

    def test_sign_selection(self):
        g = grid1d(10, length=2.0)
        f = Field.sample(g, lambda x: x**2)
        left = advect_upwind(f, (1.0,))
        right = advect_upwind(f, (-1.0,))
        x = g.coords(0)
        dx = g.spacing[0]
        assert np.allclose(left, 1.0 * (2 * x - dx), rtol=1e-12)
        assert np.allclose(right, -1.0 * (2 * x + dx), rtol=1e-12)


class TestWeno5:
    def test_constant_annihilated_to_machine_precision(self):
        g = grid1d(16)
        f = Field.full(g, 3.7)
        out = advect_weno5(f, (1.0,))
        assert np.all(out == 0.0)

    def test_polynomials_exact_with_smooth_weights(self):
        # ideal (linear) weights: the underlying stencil differentiates
        # polynomials through degree 4 exactly
        g = grid1d(12, length=2.0, origin=-1.0)
        for degree in (1, 2, 3, 4):
            coeffs = np.arange(1.0, degree + 2.0)
            poly = np.polynomial.Polynomial(coeffs)
            f = Field.sample(g, poly)
            exact = poly.deriv()(g.coords(0))
            for bias in (+1, -1):
                got = weno5_derivative(f, axis=0, bias=bias, linear_weights=True)
                assert np.allclose(got, exact, rtol=1e-11, atol=1e-11), degree

    def test_convergence_order_on_sine(self):
        errors = []
        for n in (32, 64, 128, 256):
            g = grid1d(n)
            f = Field.sample(g, np.sin)
            out = advect_weno5(f, (1.0,))
            errors.append(np.sqrt(np.mean((out - np.cos(g.coords(0))) ** 2)))
        orders = measured_order(errors)
        assert np.all(orders >= 4.5), orders

    def test_total_variation_bounded_on_step(self):
        # one linear-advection Euler step at CFL 0.4 must not inflate the
        # total variation of a step profile by more than 1%
        n = 64
        g = grid1d(n, length=1.0)
        values = np.where(g.coords(0, ghosted=True) < 0.5, 1.0, 0.0)
        f = Field(g, values)
        v = 1.0
        dt = 0.4 * g.spacing[0] / v
        new = f.interior - dt * advect_weno5(f, (v,))
        tv = lambda u: np.sum(np.abs(np.diff(u)))
        assert tv(new) <= 1.01 * tv(f.interior)

    def test_rejects_thin_ghost_rind(self):
        g = Grid(shape=(16,), spacing=(0.1,), nghost=2)
        f = Field.full(g, 1.0)
        with pytest.raises(ValueError):
            advect_weno5(f, (1.0,))

    def test_2d_advection_smooth(self):
        g = Grid(shape=(48, 48), spacing=(2 * np.pi / 48, 2 * np.pi / 48))
        f = Field.sample(g, lambda x, y: np.sin(x) * np.cos(y))
        out = advect_weno5(f, (1.0, -0.5))
        xx, yy = g.meshgrid()
        exact = 1.0 * np.cos(xx) * np.cos(yy) - 0.5 * (-np.sin(xx) * np.sin(yy))
        assert np.max(np.abs(out - exact)) < 5e-4


class TestTerrainGradient:
    def test_flat(self):
        g = Grid(shape=(8, 8), spacing=(1.0, 1.0))
        z = Field.full(g, 10.0)
        gx, gy = terrain_gradient(z)
        assert np.all(gx == 0.0) and np.all(gy == 0.0)

    def test_inclined_plane_exact(self):
        g = Grid(shape=(8, 8), spacing=(0.5, 0.5))
        z = Field.sample(g, lambda x, y: 0.3 * x)
        gx, gy = terrain_gradient(z)
        assert np.allclose(gx, 0.3, rtol=1e-13)
        assert np.allclose(gy, 0.0, atol=1e-13)

    def test_gaussian_hill_second_order(self):
        errors = []
        for n in (32, 64, 128):
            g = Grid(shape=(n,), spacing=(4.0 / n,), origin=(-2.0,))
            z = Field.sample(g, lambda x: np.exp(-x**2))
            (gx,) = terrain_gradient(z)
            x = g.coords(0)
            errors.append(np.max(np.abs(gx - (-2 * x * np.exp(-x**2)))))
        assert np.all(measured_order(errors) >= 1.9)
