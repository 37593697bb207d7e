import numpy as np
import pytest

from semiclassical_nls import (
    ComplexField,
    ConfigurationError,
    FieldDomainError,
    ScalarField,
    VectorField,
    divergence,
    gradient,
    integrate,
    laplacian_c,
    make_grid,
)


def _sine_x(grid):
    X, _ = grid.meshgrid()
    return ScalarField(grid, np.sin(2 * np.pi * X / grid.L))


class TestMakeGrid:
    def test_paper_resolution(self):
        g = make_grid(0.5, 50)
        assert g.h == pytest.approx(0.01, rel=1e-15)

    def test_unit_square(self):
        g = make_grid(1.0, 100)
        assert g.h == pytest.approx(0.01, rel=1e-15)
        assert g.h * g.n == pytest.approx(g.L, rel=1e-15)

    def test_too_few_points_rejected(self):
        with pytest.raises(ConfigurationError):
            make_grid(1.0, 3)

    def test_nonpositive_side_rejected(self):
        with pytest.raises(ConfigurationError):
            make_grid(0.0, 10)

    def test_coordinates(self):
        g = make_grid(1.0, 4)
        np.testing.assert_allclose(g.axis_coords(), [0.0, 0.25, 0.5, 0.75])


class TestFieldInvariants:
    def test_scalar_rejects_nan(self):
        g = make_grid(1.0, 4)
        values = np.zeros((4, 4))
        values[1, 2] = np.nan
        with pytest.raises(FieldDomainError):
            ScalarField(g, values)

    def test_shape_mismatch_rejected(self):
        g = make_grid(1.0, 4)
        with pytest.raises(FieldDomainError):
            ComplexField(g, np.zeros((4, 5), dtype=complex))

    def test_vector_rejects_inf(self):
        g = make_grid(1.0, 4)
        bad = np.full((4, 4), np.inf)
        with pytest.raises(FieldDomainError):
            VectorField(g, np.zeros((4, 4)), bad)


class TestGradient:
    def test_constant_field(self):
        g = make_grid(1.0, 16)
        w = gradient(ScalarField(g, np.full((16, 16), 3.7)))
        np.testing.assert_array_equal(w.comp_x, 0.0)
        np.testing.assert_array_equal(w.comp_y, 0.0)

    def test_sine_closed_form(self):
        # Central difference of sin(2*pi*x/L) is (sin(2*pi*h/L)/h)*cos(2*pi*x/L).
        g = make_grid(0.5, 40)
        w = gradient(_sine_x(g))
        X, _ = g.meshgrid()
        expected = (np.sin(2 * np.pi * g.h / g.L) / g.h) * np.cos(2 * np.pi * X / g.L)
        np.testing.assert_allclose(w.comp_x, expected, atol=1e-13)
        np.testing.assert_array_equal(w.comp_y, 0.0)

    def test_periodic_wrap_matches_padded_array(self):
        rng = np.random.default_rng(7)
        g = make_grid(1.0, 8)
        values = rng.standard_normal((8, 8))
        w = gradient(ScalarField(g, values))
        padded = np.pad(values, 1, mode="wrap")
        expected_x = (padded[1:-1, 2:] - padded[1:-1, :-2]) / (2 * g.h)
        expected_y = (padded[2:, 1:-1] - padded[:-2, 1:-1]) / (2 * g.h)
        np.testing.assert_allclose(w.comp_x, expected_x, rtol=1e-14)
        np.testing.assert_allclose(w.comp_y, expected_y, rtol=1e-14)


class TestDivergence:
    def test_constant_vector_field(self):
        g = make_grid(1.0, 16)
        d = divergence(VectorField(g, np.full((16, 16), 1.5), np.full((16, 16), -2.0)))
        np.testing.assert_array_equal(d.values, 0.0)

    def test_divergence_of_gradient_matches_composition(self):
        g = make_grid(0.5, 32)
        f = _sine_x(g)
        d = divergence(gradient(f))
        gx = gradient(f)
        ddx = gradient(ScalarField(g, gx.comp_x)).comp_x
        ddy = gradient(ScalarField(g, gx.comp_y)).comp_y
        np.testing.assert_allclose(d.values, ddx + ddy, rtol=1e-13, atol=1e-13)

    def test_x_independent_component(self):
        g = make_grid(1.0, 16)
        _, Y = g.meshgrid()
        w = VectorField(g, np.sin(2 * np.pi * Y), np.zeros((16, 16)))
        np.testing.assert_allclose(divergence(w).values, 0.0, atol=1e-12)


class TestLaplacian:
    def test_constant_field(self):
        g = make_grid(1.0, 8)
        f = ComplexField(g, np.full((8, 8), 2.0 - 1.0j))
        np.testing.assert_allclose(laplacian_c(f).values, 0.0, atol=1e-12)

    def test_sine_eigenfunction(self):
        g = make_grid(0.5, 50)
        X, _ = g.meshgrid()
        f = ComplexField(g, np.sin(2 * np.pi * X / g.L) * (1 + 1j))
        eigenvalue = -(2.0 / g.h ** 2) * (1.0 - np.cos(2 * np.pi * g.h / g.L))
        np.testing.assert_allclose(
            laplacian_c(f).values, eigenvalue * f.values, rtol=1e-11, atol=1e-9
        )

    def test_stencil_footprint(self):
        g = make_grid(1.0, 8)
        values = np.zeros((8, 8), dtype=complex)
        values[0, 0] = 1.0
        out = laplacian_c(ComplexField(g, values)).values
        nonzero = set(zip(*np.nonzero(out)))
        # (row, col) = (iy, ix); footprint of the 5-point stencil at (0, 0).
        assert nonzero == {(0, 0), (0, 1), (0, 7), (1, 0), (7, 0)}


class TestIntegrate:
    def test_unit_field_unit_square(self):
        g = make_grid(1.0, 25)
        assert integrate(ScalarField(g, np.ones((25, 25)))) == pytest.approx(1.0)

    def test_zero_field(self):
        g = make_grid(1.0, 8)
        assert integrate(ScalarField(g, np.zeros((8, 8)))) == 0.0

    def test_gaussian_mass_against_refined_quadrature(self):
        # |a0|^2 for the first experiment: 2*exp(-160*r^2), integral ~ pi/80.
        def density(grid):
            X, Y = grid.meshgrid()
            r2 = (X - grid.L / 2) ** 2 + (Y - grid.L / 2) ** 2
            return ScalarField(grid, 2.0 * np.exp(-160.0 * r2))

        coarse = integrate(density(make_grid(0.5, 50)))
        fine = integrate(density(make_grid(0.5, 500)))
        assert coarse == pytest.approx(fine, rel=1e-6)
        # The analytic whole-plane value differs by the wrapped Gaussian
        # tail (~exp(-10) at the boundary), so the tolerance is looser.
        assert coarse == pytest.approx(2 * np.pi / 160, rel=5e-5)

    def test_linearity_and_shift_invariance(self):
        rng = np.random.default_rng(3)
        g = make_grid(1.0, 12)
        u = rng.standard_normal((12, 12))
        w = rng.standard_normal((12, 12))
        left = integrate(ScalarField(g, 2.0 * u + 3.0 * w))
        right = 2.0 * integrate(ScalarField(g, u)) + 3.0 * integrate(ScalarField(g, w))
        assert left == pytest.approx(right, rel=1e-12, abs=1e-12)
        shifted = np.roll(np.roll(u, 3, axis=0), 5, axis=1)
        assert integrate(ScalarField(g, shifted)) == pytest.approx(
            integrate(ScalarField(g, u)), rel=1e-12, abs=1e-12
        )


class TestOperatorProperties:
    def test_discrete_integration_by_parts(self):
        # Central differences on periodic grids are skew-adjoint:
        # integral(f * div w) == -integral(w . grad f).
        rng = np.random.default_rng(11)
        g = make_grid(1.0, 16)
        f = ScalarField(g, rng.standard_normal((16, 16)))
        w = VectorField(g, rng.standard_normal((16, 16)), rng.standard_normal((16, 16)))
        lhs = integrate(ScalarField(g, f.values * divergence(w).values))
        gf = gradient(f)
        rhs = integrate(ScalarField(g, w.comp_x * gf.comp_x + w.comp_y * gf.comp_y))
        assert lhs == pytest.approx(-rhs, abs=1e-12)

    def test_gradient_second_order_accuracy(self):
        errors = {}
        for n in (32, 64, 128):
            g = make_grid(1.0, n)
            X, Y = g.meshgrid()
            f = ScalarField(g, np.sin(2 * np.pi * X / g.L) * np.cos(2 * np.pi * Y / g.L))
            w = gradient(f)
            exact_x = (2 * np.pi / g.L) * np.cos(2 * np.pi * X / g.L) * np.cos(2 * np.pi * Y / g.L)
            exact_y = -(2 * np.pi / g.L) * np.sin(2 * np.pi * X / g.L) * np.sin(2 * np.pi * Y / g.L)
            errors[n] = max(
                np.max(np.abs(w.comp_x - exact_x)), np.max(np.abs(w.comp_y - exact_y))
            )
        order_1 = np.log2(errors[32] / errors[64])
        order_2 = np.log2(errors[64] / errors[128])
        assert order_1 == pytest.approx(2.0, abs=0.1)
        assert order_2 == pytest.approx(2.0, abs=0.1)
