import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from lib.acceptance import homomorphism_catalogue, two_jump_step
from lib.circle import SpectralFunction, UnitGridFunction, grid_angles, sample
from lib.errors import DomainError, UnsupportedVariantError, VerificationFailure
from lib.extend import Blaschke, Scaled, SingularInner, Taylor, poisson_extend
from lib.kernel import DiskPoint
from lib.trace import (
    DiskGrid,
    TraceResult,
    approx_identity_curve,
    closed_form_product,
    default_radii,
    default_testpoints,
    isometry_report,
    isometry_shrinkage,
    product_trace_residual,
    radial_trace,
    surjectivity_roundtrip,
    trace_spectrum,
    weakstar_residual,
)

coefficients = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
spectra = st.integers(min_value=0, max_value=16).flatmap(
    lambda M: st.lists(coefficients, min_size=2 * M + 1, max_size=2 * M + 1).map(SpectralFunction)
)


class TestsRadialTrace:
    def test_identity(self):
        result = radial_trace(Taylor([0, 1]), [0.9, 0.99, 0.999], 256)
        assert np.max(np.abs(result.trace.samples - np.exp(1j * grid_angles(256)))) <= 1.1e-3
        assert result.cauchy_gaps[-1] <= 0.009 + 1e-12
        assert result.cauchy_gaps == pytest.approx([0.09, 0.009], abs=1e-12)

    def test_constant(self):
        result = radial_trace(Taylor([2 - 1j]), [0.5, 0.75])
        assert np.allclose(result.trace.samples, 2 - 1j)
        assert result.cauchy_gaps == pytest.approx([0], abs=1e-15)

    def test_blaschke_sup_norms_grow(self):
        result = radial_trace(Blaschke([0.4]), [0.9, 0.99, 0.999, 0.9999], 4096)
        assert all(b >= a for a, b in zip(result.sup_norms, result.sup_norms[1:]))
        assert 0.999 <= result.sup_norms[-1] <= 1 + 1e-12

    def test_default_schedule(self):
        assert default_radii()[:3] == [0.5, 0.75, 0.875]
        assert len(default_radii()) == 14
        assert radial_trace(Taylor([0, 0, 1]), N=64).radii == default_radii()

    @pytest.mark.parametrize("radii", [[0.5], [0.9, 0.5], [0.5, 1.0], [0.0, 0.5], [0.5, 0.5]])
    def test_radii_validation(self, radii):
        with pytest.raises(DomainError):
            radial_trace(Taylor([1]), radii)

    def test_shrinking_sup_norms_fail(self):
        trace = UnitGridFunction(np.ones(8))
        with pytest.raises(VerificationFailure):
            TraceResult(trace, [0.5, 0.9], [0.1], [1.0, 0.5])

    def test_extrapolation_is_exact_for_linear_dilates(self):
        # f = z: the dilates r e^{it} are linear in 1 - r
        result = radial_trace(Taylor([0, 1]), [0.9, 0.99], 128, extrapolate=True)
        assert np.max(np.abs(result.trace.samples - np.exp(1j * grid_angles(128)))) <= 1e-12
        assert result.trace.metadata["extrapolated"]
        assert result.trace.metadata["radius"] is None

    def test_harmonic_input(self):
        c = SpectralFunction.from_dict({-1: 1, 2: 0.5})
        result = radial_trace(c, [0.5, 0.9], 64)
        t = grid_angles(64)
        assert np.allclose(result.trace.samples, 0.9 * np.exp(-1j * t) + 0.405 * np.exp(2j * t))


class TestsTraceSpectrum:
    def test_monomials(self):
        c = trace_spectrum(Taylor([0, 0, 1]))
        assert c.coefficient(2) == 1
        assert np.count_nonzero(c.coeffs) == 1
        assert c.is_analytic

        c = trace_spectrum(Taylor([1, 0, 0, 2]))
        assert (c.coefficient(0), c.coefficient(3)) == (1, 2)

    def test_reconstruction(self):
        f = Taylor([0, 0, 3, 0, 0, 1])
        z = DiskPoint(0.5, math.pi / 3)
        assert abs(poisson_extend(trace_spectrum(f), z) - f.evaluate(z.z)) <= 1e-12

    @settings(deadline=None)
    @given(st.lists(coefficients, min_size=1, max_size=33))
    def test_reconstruction_property(self, coeffs):
        f = Taylor(coeffs)
        c = trace_spectrum(f)
        rng = np.random.default_rng(len(coeffs))
        for _ in range(50):
            z = DiskPoint(0.9 * math.sqrt(rng.uniform()), rng.uniform(-math.pi, math.pi))
            assert abs(poisson_extend(c, z) - f.evaluate(z.z)) <= 1e-10

    def test_only_taylor(self):
        with pytest.raises(UnsupportedVariantError):
            trace_spectrum(Blaschke([0.2]))


class TestsUniqueness:
    def setup_method(self):
        self.f = Taylor([0, 0, 0, 1])
        self.trace = UnitGridFunction(np.exp(3j * grid_angles(2048)))

    def test_true_trace(self):
        points = [DiskPoint(r, s) for r in (0.2, 0.4, 0.6, 0.8) for s in grid_angles(5)]
        assert weakstar_residual(self.f, self.trace, points) <= 1e-10

    def test_constant_perturbation(self):
        points = [DiskPoint(r, s) for r in (0.2, 0.4, 0.6, 0.8) for s in grid_angles(6)]
        assert weakstar_residual(self.f, self.trace + 0.1, points) >= 0.099

    def test_zero(self):
        assert weakstar_residual(Taylor([0]), UnitGridFunction(np.zeros(64))) == 0

    @settings(deadline=None, max_examples=30)
    @given(st.integers(min_value=-6, max_value=6), st.floats(min_value=1e-3, max_value=1.0))
    def test_monomial_perturbation(self, n, epsilon):
        perturbed = self.trace + epsilon * np.exp(1j * n * self.trace.angles)
        points = default_testpoints() + [DiskPoint(0.5, 0.3)]
        # |change of the extension| = epsilon r^{|n|} at every point of radius r
        assert weakstar_residual(self.f, perturbed, points) >= epsilon * 0.5 ** abs(n) - 1e-10

    def test_default_testpoints(self):
        points = default_testpoints()
        assert len(points) == 40
        assert max(z.r for z in points) == 0.9

    def test_needs_points(self):
        with pytest.raises(DomainError):
            weakstar_residual(self.f, self.trace, [])


class TestsIsometry:
    def test_blaschke(self):
        f = Blaschke([0.4])
        result = radial_trace(f, [0.5, 0.9, 0.99, 0.999, 0.9999], 4096)
        report = isometry_report(f, result.trace)
        assert report.passed
        assert 1 - 1e-3 <= report.sup_disk <= 1 + 1e-9
        assert 1 - 1e-3 <= report.sup_circle <= 1 + 1e-9

    def test_constant(self):
        f = Taylor([3])
        report = isometry_report(f, radial_trace(f, [0.5, 0.9], 64).trace)
        assert (report.sup_disk, report.sup_circle) == pytest.approx((3, 3))

    def test_monomial_from_its_trace(self):
        trace = UnitGridFunction(np.exp(2j * grid_angles(512)), {"radius": None})
        report = isometry_report(Taylor([0, 0, 1]), trace, DiskGrid(levels=10))
        assert report.sup_circle == pytest.approx(1)
        assert report.sup_disk < 1
        assert report.passed

    def test_doubled_trace_fails(self):
        f = Blaschke([0.4])
        trace = radial_trace(f, [0.5, 0.9, 0.99, 0.999, 0.9999], 4096).trace
        report = isometry_report(f, trace * 2.0)
        assert not report.passed
        assert report.sup_disk == pytest.approx(1, abs=1e-3)
        assert 0 < report.metadata["slack"] < 1e-2

    @settings(deadline=None, max_examples=25)
    @given(st.one_of(st.floats(min_value=0.1, max_value=0.9), st.floats(min_value=1.1, max_value=4.0)))
    def test_scaled_trace_fails(self, factor):
        trace = UnitGridFunction(np.exp(2j * grid_angles(512)), {"radius": None})
        assert not isometry_report(Taylor([0, 0, 1]), trace * factor, DiskGrid(levels=10)).passed

    def test_slack_covers_the_outer_annulus(self):
        trace = UnitGridFunction(np.exp(2j * grid_angles(512)), {"radius": None})
        report = isometry_report(Taylor([0, 0, 1]), trace, DiskGrid(levels=10))
        assert report.gap <= report.metadata["slack"]
        assert report.metadata["slack"] == pytest.approx(4 * 2.0**-10 * (1 - 2.0**-10))

    def test_harmonic_input_has_no_slack(self):
        c = SpectralFunction.from_dict({1: 1})
        report = isometry_report(c, 3 * radial_trace(c, [0.5, 0.9], 64).trace)
        assert report.metadata["slack"] is None
        assert report.passed

    def test_disk_grid(self):
        assert DiskGrid(levels=3).radii() == [0, 0.5, 0.75, 0.875]
        assert DiskGrid(levels=3).radii(0.8) == [0, 0.5, 0.75, 0.8]

    def test_shrinkage(self):
        shrinkage = isometry_shrinkage(Blaschke([0.4]), [0.99, 0.999, 0.9999], 4096)
        assert all(b < a for a, b in zip(shrinkage, shrinkage[1:]))
        assert shrinkage[-1] < 1e-3


class TestsHomomorphism:
    def test_exponents_add(self):
        assert product_trace_residual(Taylor([0, 1]), Taylor([0, 0, 1]), 256) <= 1e-13

    def test_blaschke_square(self):
        assert product_trace_residual(Blaschke([0.4]), Blaschke([0.4]), 1024) <= 1e-12

    def test_difference_of_squares(self):
        assert product_trace_residual(Taylor([1, 1]), Taylor([1, -1]), 512) <= 1e-13

    def test_catalogue(self):
        pairs = homomorphism_catalogue()
        assert len(pairs) == 20
        assert max(product_trace_residual(f, g, 1024) for f, g in pairs) <= 1e-12

    def test_closed_form_products(self):
        pairs = homomorphism_catalogue()
        mixed = [index for index, (f, g) in enumerate(pairs) if not closed_form_product(f, g)]
        assert mixed == [12, 13, 14, 15, 16, 19]
        assert closed_form_product(Scaled(2, Taylor([1, 1])), Scaled(1j, Taylor([0, 1])))
        assert not closed_form_product(Taylor([1]), Blaschke([0.2]))

    def test_mixed_products_are_exact_by_construction(self):
        f, g = Taylor([0.5, -1j, 0.25, 1]), Blaschke([0.7, -0.2j])
        assert product_trace_residual(f, g, 512) == 0

    def test_needs_closed_disk_specs(self):
        with pytest.raises(UnsupportedVariantError):
            product_trace_residual(SingularInner(), Taylor([1]))


class TestsApproximateIdentity:
    def test_exponential_law(self):
        g = UnitGridFunction(np.exp(1j * grid_angles(1024)))
        assert approx_identity_curve(g, [0.5, 0.9, 0.99]) == pytest.approx([0.5, 0.1, 0.01], abs=1e-12)

    def test_constant(self):
        curve = approx_identity_curve(UnitGridFunction(np.full(128, 4.0)), [0.2, 0.7])
        assert curve == pytest.approx([0, 0], abs=1e-13)

    def test_step(self):
        curve = approx_identity_curve(sample(two_jump_step(), 2**16), [0.9, 0.99, 0.999])
        assert all(b < a for a, b in zip(curve, curve[1:]))
        assert curve[-1] < 0.02


class TestsRoundTrip:
    @pytest.mark.parametrize("n", range(-16, 17))
    def test_unit_coefficients(self, n):
        result = surjectivity_roundtrip(SpectralFunction.from_dict({n: 1}))
        assert result.passed
        assert result.error <= 2e-3

    @settings(deadline=None, max_examples=20)
    @given(spectra)
    def test_error_bound(self, c):
        assert surjectivity_roundtrip(c).passed
