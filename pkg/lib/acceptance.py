"""
The selftest suite: twelve numbered checks covering the kernel, both convolution
paths, interior reproduction, traces, the homomorphism and uniqueness properties,
the approximate identity, harmonicity, the boundary round trip, density fits and
the bidisk extension. Random inputs are drawn from a generator seeded with SEED.
"""

import math
from dataclasses import dataclass
from time import perf_counter
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from lib.circle import (
    Method,
    Norm,
    SpectralFunction,
    StepBoundary,
    UnitGridFunction,
    convolve_poisson,
    grid_angles,
    norm,
    sample,
    synthesize,
)
from lib.config import CANCELLATION_TOL, SEED
from lib.density import design_matrix, equiangular_nodes, fit_span, residual_curve
from lib.errors import HardyError
from lib.extend import (
    BidiskSpectrum,
    Blaschke,
    HoloSpec,
    Scaled,
    Taylor,
    bidisk_extend,
    bidisk_quadrature,
    check_harmonic,
    poisson_extend,
    reproduce_interior,
)
from lib.kernel import DiskPoint, PropertyId, decay_table, verify_kernel_properties
from lib.logger import logger
from lib.trace import (
    approx_identity_curve,
    closed_form_product,
    default_testpoints,
    isometry_report,
    product_trace_residual,
    radial_trace,
    surjectivity_roundtrip,
    trace_spectrum,
    weakstar_residual,
)

Outcome = Tuple[bool, str]


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float


CRITERIA: Dict[int, Tuple[str, Callable[[np.random.Generator], Outcome]]] = {}


def criterion(number: int, name: str):
    def decorator(func: Callable[[np.random.Generator], Outcome]):
        CRITERIA[number] = (name, func)
        return func

    return decorator


def random_point(rng: np.random.Generator, r_max: float) -> DiskPoint:
    return DiskPoint(r_max * math.sqrt(rng.uniform()), rng.uniform(-math.pi, math.pi))


def random_taylor(rng: np.random.Generator, max_degree: int) -> Taylor:
    degree = int(rng.integers(0, max_degree + 1))
    return Taylor(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1))


def random_spectrum(rng: np.random.Generator, M: int) -> SpectralFunction:
    return SpectralFunction(rng.normal(size=2 * M + 1) + 1j * rng.normal(size=2 * M + 1))


def two_jump_step() -> StepBoundary:
    """+1 on [-pi/2, pi/2), -1 elsewhere."""
    return StepBoundary([-math.pi / 2, math.pi / 2], [1, -1])


def homomorphism_catalogue() -> List[Tuple[HoloSpec, HoloSpec]]:
    """Twenty pairs of taylor and blaschke specs. The six mixed pairs have no closed-form product."""
    z, z2 = Taylor([0, 1]), Taylor([0, 0, 1])
    one_plus, one_minus = Taylor([1, 1]), Taylor([1, -1])
    cubic = Taylor([0.5, -1j, 0.25, 1])
    b4, b4i = Blaschke([0.4]), Blaschke([0.4j])
    b2 = Blaschke([0.3 + 0.2j, -0.5])
    b3 = Blaschke([0.7, -0.2j, 0.1 - 0.6j])

    return [
        (z, z2),
        (one_plus, one_minus),
        (z, z),
        (cubic, z),
        (cubic, cubic),
        (Taylor([2]), cubic),
        (one_plus, cubic),
        (Taylor([0, 0, 0, 0, 1]), Taylor([1, 0, -1])),
        (b4, b4),
        (b4, b4i),
        (b2, b3),
        (b3, b3),
        (b4, z),
        (z2, b2),
        (cubic, b3),
        (one_minus, b4i),
        (Scaled(0.5, b2), one_plus),
        (Scaled(1j, cubic), Scaled(-2, z2)),
        (Scaled(0.3, b4), Scaled(0.7j, b3)),
        (Taylor([0.1, 0.2, 0.3]), Blaschke([0.0])),
    ]


@criterion(1, "kernel normalization")
def kernel_normalization(rng) -> Outcome:
    worst = 0.0
    for r in (0.0, 0.5, 0.9, 0.99):
        reports = verify_kernel_properties(r, 0.5, 4096)
        worst = max(worst, next(rep for rep in reports if rep.property_id is PropertyId.NORMALIZED).max_violation)

    return worst <= 1e-12, f"max |mean - 1| = {worst:.3e}"


@criterion(2, "kernel properties")
def kernel_properties(rng) -> Outcome:
    for r in (0.5, 0.9, 0.99):
        failed = [rep.property_id.value for rep in verify_kernel_properties(r, 0.5, 2**14) if not rep.passed]
        if failed:
            return False, f"properties {failed} fail at r={r}"

    decay = [value for _, value in decay_table([0.9, 0.99, 0.999, 0.9999], 0.5, 2**14)]
    decreasing = all(b < a for a, b in zip(decay, decay[1:]))
    return decreasing and decay[-1] < 1e-2, f"property v values {decay}"


@criterion(3, "interior reproduction")
def interior_reproduction(rng) -> Outcome:
    worst = {1.0: 0.0, 0.95: 0.0}
    for _ in range(20):
        f = random_taylor(rng, 32)
        for _ in range(50):
            z = random_point(rng, 0.9)
            for rho in worst:
                worst[rho] = max(worst[rho], reproduce_interior(f, z, rho, 4096).residual)

    return max(worst.values()) <= 1e-9, f"max residual rho=1: {worst[1.0]:.3e}, rho=0.95: {worst[0.95]:.3e}"


@criterion(4, "convolution path agreement")
def path_agreement(rng) -> Outcome:
    worst = 0.0
    for M in (1, 8, 32, 64):
        f = synthesize(random_spectrum(rng, M), 2048)
        for r in (0.1, 0.5, 0.9):
            gap = norm(convolve_poisson(f, r, Method.QUADRATURE) - convolve_poisson(f, r, Method.SPECTRAL), Norm.L1)
            worst = max(worst, gap)

    return worst <= 1e-9, f"max L1 gap {worst:.3e}"


@criterion(5, "trace reconstruction and isometry")
def trace_isometry(rng) -> Outcome:
    worst = 0.0
    for _ in range(20):
        f = random_taylor(rng, 32)
        c = trace_spectrum(f)
        for _ in range(50):
            z = random_point(rng, 0.9)
            worst = max(worst, abs(poisson_extend(c, z) - f.evaluate(z.z)))

    blaschke = Blaschke([0.4])
    result = radial_trace(blaschke, [0.5, 0.9, 0.99, 0.999, 0.9999], 4096)
    report = isometry_report(blaschke, result.trace)
    within = all(0.999 <= s <= 1 + 1e-9 for s in (report.sup_disk, report.sup_circle))

    return (
        worst <= 1e-10 and within and report.passed,
        f"reconstruction {worst:.3e}, sup disk {report.sup_disk:.12f}, sup circle {report.sup_circle:.12f}",
    )


@criterion(6, "trace homomorphism")
def homomorphism(rng) -> Outcome:
    pairs = homomorphism_catalogue()
    residuals = [product_trace_residual(f, g, 1024) for f, g in pairs]
    closed = sum(closed_form_product(f, g) for f, g in pairs)
    return (
        max(residuals) <= 1e-12,
        f"max residual {max(residuals):.3e} over {len(residuals)} pairs, {closed} with a closed-form product",
    )


@criterion(7, "uniqueness via density")
def uniqueness(rng) -> Outcome:
    f = Taylor([0, 0, 0, 1])
    t = UnitGridFunction(np.exp(3j * grid_angles(2048)))
    testpoints = default_testpoints()

    exact = weakstar_residual(f, t, testpoints)
    perturbed = weakstar_residual(f, t + 0.1 * np.exp(5j * t.angles), testpoints)
    bound = 0.1 * 0.5**5 - CANCELLATION_TOL

    return exact <= 1e-10 and perturbed >= bound, f"true trace {exact:.3e}, perturbed {perturbed:.3e} >= {bound:.3e}"


@criterion(8, "approximate identity")
def approximate_identity(rng) -> Outcome:
    radii = [0.5, 0.9, 0.99]
    exponential = UnitGridFunction(np.exp(1j * grid_angles(1024)))
    law = max(abs(e - (1 - r)) for e, r in zip(approx_identity_curve(exponential, radii), radii))

    curve = approx_identity_curve(sample(two_jump_step(), 2**16), [0.9, 0.99, 0.999])
    decreasing = all(b < a for a, b in zip(curve, curve[1:]))

    return law <= 1e-12 and decreasing and curve[-1] < 0.02, f"law gap {law:.3e}, step curve {curve}"


@criterion(9, "harmonicity")
def harmonicity(rng) -> Outcome:
    worst = 0.0
    for _ in range(10):
        boundary = random_spectrum(rng, 8)
        for _ in range(5):
            a = random_point(rng, 0.5)
            radius = rng.uniform(0.05, 0.95 - a.r)
            worst = max(worst, check_harmonic(boundary, a, radius))

    return worst <= 1e-9, f"max mean-value residual {worst:.3e}"


@criterion(10, "boundary round trip")
def round_trip(rng) -> Outcome:
    for _ in range(10):
        result = surjectivity_roundtrip(random_spectrum(rng, int(rng.integers(0, 17))))
        if not result.passed:
            return False, f"error {result.error:.3e} above bound {result.bound:.3e}"

    worst = max(surjectivity_roundtrip(SpectralFunction.from_dict({n: 1})).error for n in range(-16, 17))
    return worst <= 2e-3, f"max unit-coefficient error {worst:.3e}"


# The exact L1 optimum over 64 equiangular nodes at r = 0.95 is about 0.0779
STEP_FIT_BOUND = 0.08


@criterion(11, "density fit")
def density(rng) -> Outcome:
    curve = residual_curve(sample(two_jump_step(), 8192), [8, 16, 32, 64], 0.95)
    decreasing = all(b < a for a, b in zip(curve, curve[1:]))

    nodes = equiangular_nodes(8, 0.5) + [DiskPoint(0.85, s + math.pi / 8) for s in grid_angles(4)]
    weights = rng.normal(size=len(nodes)) + 1j * rng.normal(size=len(nodes))
    target = UnitGridFunction(design_matrix(nodes, 4096) @ weights)
    fit = fit_span(target, nodes)
    recovered = float(np.max(np.abs(fit.coefficients - weights)))

    return (
        decreasing and curve[-1] < STEP_FIT_BOUND and fit.residual_l1 <= 1e-9 and recovered <= CANCELLATION_TOL,
        f"step residuals {curve}, in-span residual {fit.residual_l1:.3e}, coefficient error {recovered:.3e}",
    )


@criterion(12, "bidisk extension")
def bidisk(rng) -> Outcome:
    spec = BidiskSpectrum.from_dict({(2, 3): 1})
    worst = 0.0
    for _ in range(20):
        z1, z2 = random_point(rng, 0.95), random_point(rng, 0.95)
        exact = z1.r**2 * z2.r**3 * np.exp(1j * (2 * z1.sigma + 3 * z2.sigma))
        worst = max(worst, abs(bidisk_extend(spec, z1, z2) - exact))

    z1, z2 = DiskPoint(0.6, 0.3), DiskPoint(0.8, -2.0)
    quadrature = abs(bidisk_quadrature(spec, z1, z2) - bidisk_extend(spec, z1, z2))
    return worst <= 1e-10 and quadrature <= 1e-8, f"closed form {worst:.3e}, quadrature {quadrature:.3e}"


def run_criteria(selected: Optional[Iterable[int]] = None, seed: int = SEED) -> List[CriterionResult]:
    """Runs the selected criteria (all by default) in numeric order, each with its own
    generator seeded from `seed` and its number, so subsets reproduce the full run."""
    numbers = sorted(CRITERIA) if selected is None else sorted(set(selected))
    results = []
    for number in numbers:
        if number not in CRITERIA:
            raise HardyError(f"unknown criterion {number}, expected one of {sorted(CRITERIA)}")

        name, check = CRITERIA[number]
        start = perf_counter()
        try:
            passed, detail = check(np.random.default_rng([seed, number]))
        except (HardyError, np.linalg.LinAlgError) as err:
            passed, detail = False, f"{type(err).__name__}: {err}"
        seconds = perf_counter() - start

        logger.info(f"Criterion {number} ({name}): {'pass' if passed else 'FAIL'} in {seconds:.2f}s, {detail}")
        results.append(CriterionResult(number, name, bool(passed), detail, seconds))

    return results
