import cmath
import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from lib.circle import Norm, SpectralFunction, StepBoundary, UnitGridFunction, norm, sample, synthesize
from lib.errors import DomainError
from lib.extend import (
    BidiskSpectrum,
    Blaschke,
    Product,
    Scaled,
    SingularInner,
    Taylor,
    bidisk_extend,
    bidisk_quadrature,
    check_harmonic,
    extend_on_points,
    multiply,
    poisson_extend,
    polar_points,
    reproduce_interior,
    to_unit_disk,
)
from lib.kernel import DiskPoint

points = st.builds(
    DiskPoint,
    st.floats(min_value=0.0, max_value=0.9),
    st.floats(min_value=-math.pi, max_value=math.pi),
)
coefficients = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def spectra(M: int):
    return st.lists(coefficients, min_size=2 * M + 1, max_size=2 * M + 1).map(SpectralFunction)


class TestsPoissonExtension:
    @settings(deadline=None)
    @given(points)
    def test_constant(self, z):
        assert abs(poisson_extend(UnitGridFunction(np.ones(512)), z) - 1) <= 1e-12

    def test_spectral_multiplier(self):
        z = DiskPoint(0.5, math.pi / 3)
        c = SpectralFunction.from_dict({1: 1})
        assert poisson_extend(c, z) == pytest.approx(0.5 * cmath.exp(1j * math.pi / 3), abs=1e-15)
        assert poisson_extend(synthesize(c, 4096), z) == pytest.approx(poisson_extend(c, z), abs=1e-12)

    @settings(deadline=None)
    @given(points)
    def test_negative_frequency(self, z):
        c = SpectralFunction.from_dict({-2: 1})
        assert poisson_extend(c, z) == pytest.approx(z.r**2 * cmath.exp(-2j * z.sigma), abs=1e-14)

    @settings(deadline=None)
    @given(spectra(3), spectra(3), coefficients, coefficients, points)
    def test_linearity(self, f, g, alpha, beta, z):
        combined = poisson_extend(alpha * f + beta * g, z)
        separate = alpha * poisson_extend(f, z) + beta * poisson_extend(g, z)
        assert abs(combined - separate) <= 1e-10 * (1 + abs(alpha) + abs(beta))

    @settings(deadline=None)
    @given(spectra(8), points)
    def test_paths_agree(self, c, z):
        grid = synthesize(c, 512)
        assert abs(poisson_extend(grid, z) - poisson_extend(c, z)) <= 1e-9

    def test_maximum_principle(self):
        step = sample(StepBoundary([-1.0, 0.5, 2.0], [1, -1j, 0.5]), 2048)
        values = extend_on_points(step, polar_points([0.1, 0.5, 0.9], 16))
        assert np.max(np.abs(values)) <= norm(step, Norm.SUP) + 1e-12

    def test_declarative_boundary_is_sampled(self):
        step = StepBoundary([-1.0, 2.0], [1, -1])
        z = DiskPoint(0.3, 0.2)
        assert poisson_extend(step, z, N=1024) == poisson_extend(sample(step, 1024), z)

    def test_general_disk_reduction(self):
        z = to_unit_disk(1 + 0.5j, a=1, R=2)
        assert z.r == pytest.approx(0.25)
        assert z.sigma == pytest.approx(math.pi / 2)
        with pytest.raises(DomainError):
            to_unit_disk(0, R=0)


class TestsReproduction:
    def test_polynomial(self):
        result = reproduce_interior(Taylor([0, 0, 3, 0, 0, 1]), DiskPoint(0.5, math.pi / 3), 1.0, 1024)
        assert result.residual <= 1e-10

    @pytest.mark.parametrize("rho", [1.0, 0.95, 0.6])
    def test_constant(self, rho):
        assert reproduce_interior(Taylor([7]), DiskPoint(0.5, 1.0), rho).residual <= 1e-13

    def test_dilated_blaschke(self):
        assert reproduce_interior(Blaschke([0.4]), DiskPoint(0.7, 0), 0.9, 4096).residual <= 1e-8

    def test_singular_inner_needs_dilation(self):
        f = SingularInner(1.0, 0.0)
        with pytest.raises(DomainError):
            reproduce_interior(f, DiskPoint(0.5, 1.0), 1.0)

        assert reproduce_interior(f, DiskPoint(0.5, 1.0), 0.9, 4096).residual <= 1e-9

    @pytest.mark.parametrize("rho", [0.5, 0.3, 1.2])
    def test_dilation_bounds(self, rho):
        with pytest.raises(DomainError):
            reproduce_interior(Taylor([1, 1]), DiskPoint(0.5), rho)

    @settings(deadline=None, max_examples=25)
    @given(st.lists(coefficients, min_size=1, max_size=33), points, st.sampled_from([1.0, 0.95]))
    def test_taylor_specs(self, coeffs, z, rho):
        assert reproduce_interior(Taylor(coeffs), z, rho, 4096).residual <= 1e-9


class TestsSpecs:
    def test_blaschke_zeros_inside(self):
        with pytest.raises(DomainError):
            Blaschke([1.0])
        with pytest.raises(DomainError):
            Blaschke([0.3, 1.5j])

    def test_singular_inner_is_not_evaluable_at_its_atom(self):
        f = SingularInner(2.0, math.pi / 2)
        with pytest.raises(DomainError):
            f.evaluate(1j)
        assert abs(f.evaluate(-1j)) == pytest.approx(1)
        assert not f.closed_disk_analytic

    def test_multiply_keeps_closed_forms(self):
        assert np.allclose(multiply(Taylor([1, 1]), Taylor([1, -1])).coeffs, [1, 0, -1])
        assert np.allclose(multiply(Blaschke([0.4]), Blaschke([0.1j])).zeros, [0.4, 0.1j])
        assert isinstance(multiply(Taylor([1]), Blaschke([0.2])), Product)

        scaled = multiply(Scaled(2, Taylor([0, 1])), Taylor([0, 1]))
        assert isinstance(scaled, Scaled)
        assert scaled.evaluate(0.5) == pytest.approx(0.5)

    def test_product_of_singular_is_not_closed_disk_analytic(self):
        assert not Product([Taylor([1]), SingularInner()]).closed_disk_analytic
        assert Product([Taylor([1]), Blaschke([0.5])]).closed_disk_analytic


class TestsHarmonicity:
    def test_constant(self):
        c = SpectralFunction.from_dict({0: 1})
        assert check_harmonic(c, DiskPoint(0.3, 1.0), 0.2, 64) <= 1e-13

    def test_cosine(self):
        c = SpectralFunction.from_dict({1: 1, -1: 1})
        assert check_harmonic(c, DiskPoint(0.2, 0), 0.5, 128) <= 1e-11

    def test_random_spectrum(self):
        rng = np.random.default_rng(7)
        c = SpectralFunction(rng.normal(size=17) + 1j * rng.normal(size=17))
        assert check_harmonic(c, DiskPoint(0.4, 2.0), 0.3, 256) <= 1e-9

    def test_refines_to_rounding(self):
        c = SpectralFunction.from_dict({3: 1, -5: 2j})
        residuals = [check_harmonic(c, DiskPoint(0.3, -1.0), 0.4, M) for M in (32, 64, 128)]
        assert max(residuals) <= 1e-12

    @pytest.mark.parametrize("a, radius", [(DiskPoint(0.8), 0.3), (DiskPoint(0.1), 0.0), (DiskPoint(0.1), -0.1)])
    def test_circle_inside_disk(self, a, radius):
        with pytest.raises(DomainError):
            check_harmonic(SpectralFunction.from_dict({0: 1}), a, radius)

    def test_coarse_circle_warns(self, caplog):
        check_harmonic(SpectralFunction.from_dict({8: 1}), DiskPoint(0.1), 0.2, 16)
        assert "Mean-value circle" in caplog.text


class TestsBidisk:
    def test_constant(self):
        spec = BidiskSpectrum.from_dict({(0, 0): 1})
        assert bidisk_extend(spec, DiskPoint(0.3, 1.0), DiskPoint(0.9, -2.0)) == pytest.approx(1)

    @settings(deadline=None)
    @given(points, points)
    def test_tensor_multiplier(self, z1, z2):
        spec = BidiskSpectrum.from_dict({(2, 3): 1})
        exact = z1.r**2 * z2.r**3 * cmath.exp(1j * (2 * z1.sigma + 3 * z2.sigma))
        assert abs(bidisk_extend(spec, z1, z2) - exact) <= 1e-10

    def test_sum_of_coordinates(self):
        spec = BidiskSpectrum.from_dict({(1, 0): 1, (0, 1): 1})
        assert bidisk_extend(spec, DiskPoint(0.5), DiskPoint(0.5)) == pytest.approx(1.0)

    def test_quadrature_oracle(self):
        spec = BidiskSpectrum.from_dict({(2, 3): 1, (-1, 2): 0.5j})
        z1, z2 = DiskPoint(0.6, 0.3), DiskPoint(0.8, -2.0)
        assert abs(bidisk_quadrature(spec, z1, z2) - bidisk_extend(spec, z1, z2)) <= 1e-8

    def test_shape_validation(self):
        with pytest.raises(DomainError):
            BidiskSpectrum(np.ones((2, 3)))
