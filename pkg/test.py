import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from lib.circle import (
    Method,
    Norm,
    Restriction,
    SpectralFunction,
    StepBoundary,
    TrigBoundary,
    UnitGridFunction,
    analyze,
    convolve_poisson,
    grid_angles,
    norm,
    sample,
    synthesize,
)
from lib.config import FORM_ULPS
from lib.errors import AliasingError, DomainError
from lib.extend import Blaschke
from lib.kernel import (
    DiskPoint,
    PropertyId,
    decay_table,
    eval_kernel,
    eval_kernel_at,
    herglotz_eval,
    kernel_form_discrepancy,
    kernel_spectrum,
    verify_kernel_properties,
)
from lib.utils import format_number, normalize_angle

radii = st.floats(min_value=0.0, max_value=0.999)
angles = st.floats(min_value=-math.pi, max_value=math.pi)
coefficients = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
spectra = st.integers(min_value=0, max_value=16).flatmap(
    lambda M: st.lists(coefficients, min_size=2 * M + 1, max_size=2 * M + 1).map(SpectralFunction)
)
small_radii = st.floats(min_value=0.0, max_value=0.8)


def random_samples(seed: int, N: int = 256, nonnegative: bool = False) -> UnitGridFunction:
    rng = np.random.default_rng(seed)
    if nonnegative:
        return UnitGridFunction(rng.uniform(0, 5, N))

    return UnitGridFunction(rng.normal(size=N) + 1j * rng.normal(size=N))


def report(reports, property_id: PropertyId):
    return next(r for r in reports if r.property_id is property_id)


class TestsKernel:
    def test_closed_form_values(self):
        assert eval_kernel(0, 1.234) == 1
        assert eval_kernel(0.5, 0) == pytest.approx(3, rel=1e-15)
        assert eval_kernel(0.5, math.pi) == pytest.approx(1 / 3, rel=1e-15)

    def test_scalar_in_scalar_out(self):
        assert isinstance(eval_kernel(0.3, 0.1), float)
        assert eval_kernel(0.3, np.zeros(5)).shape == (5,)

    @pytest.mark.parametrize("r, theta", [(1.0, 0.0), (1.5, 0.0), (-0.1, 0.0), (0.5, math.nan), (0.5, math.inf)])
    def test_domain_errors(self, r, theta):
        with pytest.raises(DomainError):
            eval_kernel(r, theta)

    def test_kernel_at_point(self):
        assert eval_kernel_at(DiskPoint(0.5, 0.7), 0.7) == pytest.approx(3)
        assert eval_kernel_at(DiskPoint(0, 0), 2.0) == 1
        assert eval_kernel_at(DiskPoint(0.5, 0), math.pi) == pytest.approx(1 / 3)

    @settings(deadline=None)
    @given(radii, angles)
    def test_closed_forms_agree(self, r, theta):
        assert kernel_form_discrepancy(r, theta) <= FORM_ULPS

    def test_closed_forms_agree_near_the_boundary(self):
        # The naive denominator 1 - 2r cos(theta) + r^2 keeps no digits here
        assert kernel_form_discrepancy(0.9999, 1e-4) <= FORM_ULPS
        assert eval_kernel(0.9999, 1e-4) == pytest.approx((1 - 0.9999**2) / ((1e-4) ** 2 + 0.9999 * 1e-8), rel=1e-6)

    def test_verify_logs_nothing_when_forms_agree(self, caplog):
        eval_kernel(0.9, grid_angles(256), verify=True)
        assert "disagree" not in caplog.text

    def test_spectrum(self):
        assert np.allclose(kernel_spectrum(0, 3).coeffs, [0, 0, 0, 1, 0, 0, 0])
        assert np.allclose(kernel_spectrum(0.5, 2).coeffs, [0.25, 0.5, 1, 0.5, 0.25])
        assert kernel_spectrum(0.9, 0).coefficient(0) == 1

    def test_spectrum_matches_analysis_of_samples(self):
        c = analyze(UnitGridFunction(eval_kernel(0.5, grid_angles(64))))
        for n in range(-16, 17):
            assert abs(c.coefficient(n) - 0.5 ** abs(n)) <= 1e-10

    def test_properties_pass(self):
        reports = verify_kernel_properties(0.5, 0.5, 4096)
        assert [r.property_id for r in reports] == list(PropertyId)
        assert all(r.passed for r in reports)
        assert report(reports, PropertyId.NORMALIZED).max_violation <= 1e-12

    def test_property_five_values(self):
        assert report(verify_kernel_properties(0, 1.0, 64), PropertyId.CONCENTRATED).value == 1
        value = report(verify_kernel_properties(0.999, 0.1, 2**16), PropertyId.CONCENTRATED).value
        assert value == eval_kernel(0.999, 0.1)

    @pytest.mark.parametrize("delta, N", [(0.0, 64), (math.pi, 64), (0.5, 8)])
    def test_properties_validate_inputs(self, delta, N):
        with pytest.raises(DomainError):
            verify_kernel_properties(0.5, delta, N)

    def test_concentration_decays(self):
        values = [v for _, v in decay_table([0.9, 0.99, 0.999, 0.9999], 0.5, 2**14)]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert values[-1] < 1e-2

    def test_herglotz(self):
        assert herglotz_eval(DiskPoint(0, 0), 1.0) == pytest.approx(1)
        assert herglotz_eval(DiskPoint(0.5, 0), 0) == pytest.approx(3)

        value = herglotz_eval(DiskPoint(0.5, math.pi / 2), 0)
        assert value.real == pytest.approx(eval_kernel(0.5, math.pi / 2))
        assert value.imag == pytest.approx(2 * 0.5 / 1.25)

    @settings(deadline=None)
    @given(radii, angles, angles)
    def test_herglotz_real_part_is_kernel(self, r, sigma, t):
        z = DiskPoint(r, sigma)
        assert herglotz_eval(z, t).real == pytest.approx(eval_kernel_at(z, t), rel=1e-12, abs=1e-12)


class TestsDiskPoint:
    def test_angles_normalize(self):
        assert DiskPoint(0.5, 3 * math.pi).sigma == pytest.approx(math.pi)
        assert DiskPoint(0.5, -math.pi).sigma == math.pi
        assert normalize_angle(-3 * math.pi / 2) == pytest.approx(math.pi / 2)

    def test_complex_round_trip(self):
        z = DiskPoint.from_complex(0.3 - 0.4j)
        assert z.r == pytest.approx(0.5)
        assert z.z == pytest.approx(0.3 - 0.4j)

    def test_outside_disk(self):
        with pytest.raises(DomainError):
            DiskPoint(1.0)
        with pytest.raises(DomainError):
            DiskPoint.from_complex(1.2j)


class TestsCircle:
    def test_sample_trig(self):
        assert np.allclose(sample(TrigBoundary(SpectralFunction.from_dict({0: 1})), 8).samples, 1)

        samples = sample(TrigBoundary(SpectralFunction.from_dict({1: 1})), 4).samples
        assert np.allclose(samples, np.exp(1j * np.array([-math.pi, -math.pi / 2, 0, math.pi / 2])))

    def test_blaschke_restriction_is_unimodular(self):
        samples = sample(Restriction(Blaschke([0.4])), 1024).samples
        assert np.max(np.abs(np.abs(samples) - 1)) <= 1e-12

    def test_step_takes_right_limits(self):
        step = StepBoundary([-math.pi / 2, math.pi / 2], [1, -1])
        assert list(step.evaluate(np.array([-math.pi, -math.pi / 2, 0, math.pi / 2, math.pi]))) == [-1, 1, 1, -1, -1]

    @pytest.mark.parametrize("breaks, values", [([], []), ([1.0, 0.0], [1, 2]), ([-4.0], [1]), ([0.0], [1, 2])])
    def test_step_validation(self, breaks, values):
        with pytest.raises(DomainError):
            StepBoundary(breaks, values)

    def test_analyze(self):
        c = analyze(UnitGridFunction(np.ones(8)))
        assert abs(c.coefficient(0) - 1) <= 1e-14
        assert np.max(np.abs(np.delete(c.coeffs, c.M))) <= 1e-14

        c = analyze(UnitGridFunction(np.exp(2j * grid_angles(16))))
        assert abs(c.coefficient(2) - 1) <= 1e-14
        assert np.max(np.abs(np.delete(c.coeffs, c.M + 2))) <= 1e-14

    def test_synthesize(self):
        assert np.allclose(synthesize(SpectralFunction.from_dict({0: 5}), 4).samples, 5)
        assert np.allclose(synthesize(SpectralFunction.from_dict({1: 1, -1: 1}), 8).samples, 2 * np.cos(grid_angles(8)))

        direct = eval_kernel(0.5, grid_angles(64))
        assert np.max(np.abs(synthesize(kernel_spectrum(0.5, 31), 64).samples - direct)) <= 1e-9

    def test_synthesize_refuses_aliasing(self):
        with pytest.raises(AliasingError):
            synthesize(SpectralFunction.from_dict({4: 1}), 8)

    def test_norms(self):
        ones = UnitGridFunction(np.ones(16))
        assert norm(ones, Norm.L1) == 1
        assert norm(ones, Norm.SUP) == 1
        assert norm(UnitGridFunction(np.exp(1j * grid_angles(64)))) == pytest.approx(1)
        assert norm(UnitGridFunction(2 * np.cos(grid_angles(4096)))) == pytest.approx(4 / math.pi, abs=2e-3)

    @pytest.mark.parametrize("method", list(Method))
    def test_convolving_constants(self, method):
        smoothed = convolve_poisson(UnitGridFunction(np.ones(256)), 0.7, method)
        assert np.max(np.abs(smoothed.samples - 1)) <= 1e-12

    def test_spectral_multiplier(self):
        f = UnitGridFunction(np.exp(1j * grid_angles(64)))
        assert np.max(np.abs(convolve_poisson(f, 0.5, Method.SPECTRAL).samples - 0.5 * f.samples)) <= 1e-14

    def test_paths_agree_on_a_step(self):
        f = sample(StepBoundary([-1.0, 2.0], [1, -1]), 2**14)
        quadrature = convolve_poisson(f, 0.9, Method.QUADRATURE)
        spectral = convolve_poisson(f, 0.9, Method.SPECTRAL)
        assert norm(quadrature - spectral) <= 1e-8
        assert not quadrature.metadata["aliasing_warning"]

    def test_under_resolved_quadrature_is_flagged(self):
        smoothed = convolve_poisson(UnitGridFunction(np.ones(64)), 0.95, Method.QUADRATURE)
        assert smoothed.metadata["aliasing_warning"]

    @settings(deadline=None)
    @given(st.floats(min_value=0.0, max_value=0.99))
    def test_approximate_identity_law(self, r):
        f = UnitGridFunction(np.exp(1j * grid_angles(256)))
        assert norm(convolve_poisson(f, r) - f) == pytest.approx(1 - r, abs=1e-12)


class TestsCircleInvariants:
    @settings(deadline=None)
    @given(spectra, st.sampled_from([33, 64, 101]))
    def test_analysis_inverts_synthesis(self, c, N):
        recovered = analyze(synthesize(c, N))
        assert max(abs(recovered.coefficient(n) - c.coefficient(n)) for n in recovered.frequencies) <= 1e-12

    @settings(deadline=None)
    @given(spectra)
    def test_parseval(self, c):
        f = synthesize(c, 64)
        assert np.mean(np.abs(f.samples) ** 2) == pytest.approx(np.sum(np.abs(c.coeffs) ** 2), rel=1e-12, abs=1e-12)

    @settings(deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1), small_radii, small_radii, st.sampled_from(list(Method)))
    def test_semigroup(self, seed, r, s, method):
        f = random_samples(seed)
        twice = convolve_poisson(convolve_poisson(f, r, method), s, method)
        assert np.max(np.abs(twice.samples - convolve_poisson(f, r * s, method).samples)) <= 1e-11

    @settings(deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1), small_radii)
    def test_positivity(self, seed, r):
        smoothed = convolve_poisson(random_samples(seed, nonnegative=True), r, Method.QUADRATURE).samples
        assert np.min(smoothed.real) >= -1e-12
        assert np.max(np.abs(smoothed.imag)) <= 1e-12

    @settings(deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1), small_radii, st.sampled_from(list(Norm)))
    def test_contraction(self, seed, r, which):
        f = random_samples(seed)
        assert norm(convolve_poisson(f, r, Method.QUADRATURE), which) <= norm(f, which) + 1e-12

    def test_kernel_samples_are_positive(self):
        assert np.min(eval_kernel(0.999, grid_angles(4096))) > 0


class TestsFormatting:
    def test_format_number(self):
        assert format_number(1.0, 6) == "1.0"
        assert format_number(0.1, 17) == "0.10000000000000001"
        assert format_number(1 / 3, 6) == "0.333333"
        assert format_number(-2.0, 17) == "-2.0"
