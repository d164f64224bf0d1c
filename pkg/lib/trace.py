"""
Boundary traces of bounded holomorphic and harmonic functions.

The trace f* is approached through the radial dilates f_r(t) = f(r e^{it}) as
r -> 1. Alongside the estimate this module checks what the trace must satisfy:
it reproduces f through the Poisson integral, it is unique against Poisson
test functionals, the map f -> f* preserves sup norms and products, and
Poisson smoothing of a boundary function converges back to it in L1.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from lib.circle import (
    Method,
    Norm,
    SpectralFunction,
    UnitGridFunction,
    analyze,
    convolve_poisson,
    dilate,
    grid_angles,
    norm,
    synthesize,
)
from lib.config import DEFAULT_GRID_SIZE, DISK_GRID_LEVELS, RADII_SCHEDULE_LENGTH
from lib.errors import DomainError, UnsupportedVariantError, VerificationFailure
from lib.extend import HoloSpec, Product, Scaled, Taylor, multiply, poisson_extend
from lib.kernel import DiskPoint
from lib.logger import logger

MONOTONE_TOL = 1e-12
ISOMETRY_TOL = 1e-9


def default_radii(count: int = RADII_SCHEDULE_LENGTH) -> List[float]:
    """r_n = 1 - 2^{-n}, n = 1..count."""
    return [1 - 2.0**-n for n in range(1, count + 1)]


def check_radii(radii: Sequence[float], minimum: int = 1) -> List[float]:
    radii = [float(r) for r in radii]
    if len(radii) < minimum:
        raise DomainError(f"need at least {minimum} radii, got {len(radii)}")
    if any(not 0 < r < 1 for r in radii):
        raise DomainError(f"radii must lie in (0, 1), got {radii}")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError(f"radii must be strictly increasing, got {radii}")

    return radii


@dataclass
class TraceResult:
    trace: UnitGridFunction
    radii: List[float]
    cauchy_gaps: List[float]
    sup_norms: List[float]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        check_radii(self.radii)
        tol = MONOTONE_TOL * max(1.0, *self.sup_norms)
        drops = [a - b for a, b in zip(self.sup_norms, self.sup_norms[1:])]
        if drops and max(drops) > tol:
            # |f| on circles of growing radius cannot shrink (maximum modulus principle)
            raise VerificationFailure(f"sup norms of dilates decrease by {max(drops):.3e}", [self.sup_norms])


Interior = Union[HoloSpec, SpectralFunction]


def _dilate_samples(f: Interior, r: float, t: np.ndarray) -> np.ndarray:
    if isinstance(f, SpectralFunction):
        # Harmonic interior meaning: the dilate is the multiplier r^{|n|}
        return dilate(f, r).evaluate(t)

    return np.asarray(f.evaluate(r * np.exp(1j * t)), dtype=complex)


def radial_trace(
    f: Interior,
    radii: Optional[Sequence[float]] = None,
    N: int = DEFAULT_GRID_SIZE,
    extrapolate: bool = False,
) -> TraceResult:
    """Samples the dilates f_r on the grid and takes the last one as the trace estimate.

    Args:
        f (HoloSpec | SpectralFunction): Holomorphic spec, or a two-sided spectrum read as
            the harmonic function sum_n c_n r^{|n|} e^{i n sigma}.
        radii (Sequence[float], optional): Strictly increasing radii in (0, 1), at least two.
            Defaults to the schedule 1 - 2^{-n}.
        N (int, optional): Grid size. Defaults to DEFAULT_GRID_SIZE.
        extrapolate (bool, optional): Replace the last dilate by its linear extrapolation in
            1 - r from the last two radii. Defaults to False.

    Returns:
        TraceResult: Trace estimate, radii, L1 gaps between successive dilates and the sup
            norm of every dilate.
    """
    radii = check_radii(default_radii() if radii is None else radii, minimum=2)
    t = grid_angles(N)

    dilates = [UnitGridFunction(_dilate_samples(f, r, t), {"N": N, "radius": r}) for r in radii]
    gaps = [norm(b - a, Norm.L1) for a, b in zip(dilates, dilates[1:])]
    sup_norms = [norm(d, Norm.SUP) for d in dilates]

    trace = dilates[-1]
    if extrapolate:
        (ra, a), (rb, b) = zip(radii[-2:], dilates[-2:])
        trace = UnitGridFunction(b.samples + (b.samples - a.samples) * (1 - rb) / (rb - ra), {"N": N, "radius": None})

    trace.metadata["extrapolated"] = extrapolate
    logger.info(f"Radial trace over {len(radii)} radii up to r={radii[-1]}: last gap {gaps[-1]:.3e}")

    return TraceResult(trace, radii, gaps, sup_norms, {"N": N, "extrapolated": extrapolate})


def trace_spectrum(f: HoloSpec) -> SpectralFunction:
    """Exact trace of a polynomial sum_n a_n z^n: the analytic spectrum c_n = a_n."""
    if not isinstance(f, Taylor):
        raise UnsupportedVariantError(f"trace_spectrum needs a taylor spec, got {type(f).__name__}")

    d = f.degree
    return SpectralFunction(np.concatenate([np.zeros(d, dtype=complex), f.coeffs]))


def default_testpoints() -> List[DiskPoint]:
    """5 radii x 8 angles, radii <= 0.9."""
    return [DiskPoint(r, sigma) for r in (0.1, 0.3, 0.5, 0.7, 0.9) for sigma in grid_angles(8)]


def weakstar_residual(
    f: HoloSpec,
    candidate: UnitGridFunction,
    testpoints: Optional[Sequence[DiskPoint]] = None,
) -> float:
    """max_z |F(z) - f(z)| with F the Poisson integral of the candidate trace.

    Vanishing at every Poisson test functional P_z identifies the candidate as the
    trace, the span of {P_z} being dense in L1.
    """
    testpoints = default_testpoints() if testpoints is None else list(testpoints)
    if not testpoints:
        raise DomainError("need at least one test point")

    return max(abs(poisson_extend(candidate, z) - complex(f.evaluate(z.z))) for z in testpoints)


@dataclass
class DiskGrid:
    """Polar grid for sup-over-disk estimates: radii 1 - 2^{-j}, j = 0..levels, capped at
    the trace radius, and `angles` equispaced angles (defaults to the trace grid)."""

    levels: int = DISK_GRID_LEVELS
    angles: Optional[int] = None

    def radii(self, r_max: Optional[float] = None) -> List[float]:
        r_max = 1 - 2.0**-self.levels if r_max is None else r_max
        return [1 - 2.0**-j for j in range(self.levels + 1) if 1 - 2.0**-j < r_max] + [r_max]


@dataclass
class IsometryReport:
    sup_disk: float
    sup_circle: float
    passed: bool
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def gap(self) -> float:
        return self.sup_circle - self.sup_disk


def _boundary_slack(f: HoloSpec, r_max: float, N: int) -> float:
    """How far sup |f| can rise between the circle of radius r_max and T:
    2 (1 - r_max) sup |f'| on the r_max circle, with f' from the spectral t-derivative
    of the dilate (d/dt f(r e^{it}) = i z f'(z))."""
    if r_max >= 1:
        return 0.0

    c = analyze(UnitGridFunction(_dilate_samples(f, r_max, grid_angles(N))))
    derivative = synthesize(SpectralFunction(1j * c.frequencies * c.coeffs), N)
    return 2 * (1 - r_max) * norm(derivative, Norm.SUP) / r_max


def isometry_report(
    f: Interior,
    trace: UnitGridFunction,
    disk_grid: Optional[DiskGrid] = None,
    tol: float = ISOMETRY_TOL,
) -> IsometryReport:
    """Estimates sup_D |f| on a polar grid and sup_T |f*| from the trace samples.

    sup_D <= sup_T + tol must always hold. For specs analytic on the closed disk the
    two must also agree: sup_D >= sup_T - tol - slack, where the slack bounds the rise
    of |f| between the outermost grid radius and T (metadata["slack"]). Harmonic
    inputs only report the gap.
    """
    disk_grid = disk_grid or DiskGrid()
    radii = disk_grid.radii(trace.metadata.get("radius"))
    t = grid_angles(disk_grid.angles or trace.N)

    sup_disk = max(float(np.max(np.abs(_dilate_samples(f, r, t)))) for r in radii)
    sup_circle = norm(trace, Norm.SUP)
    metadata: Dict[str, Any] = {"r_max": radii[-1], "angles": t.size, "tol": tol, "slack": None}

    passed = sup_disk <= sup_circle + tol
    if isinstance(f, HoloSpec) and f.closed_disk_analytic:
        metadata["slack"] = _boundary_slack(f, radii[-1], t.size)
        passed = passed and sup_disk >= sup_circle - tol - metadata["slack"]

    if not passed:
        logger.warning(f"Isometry check failed: sup over disk {sup_disk}, sup over circle {sup_circle}")

    return IsometryReport(sup_disk, sup_circle, passed, metadata)


def closed_form_product(f: HoloSpec, g: HoloSpec) -> bool:
    """Whether multiply(f, g) has its own closed form (taylor or blaschke up to a scalar)."""
    product = multiply(f, g)
    while isinstance(product, Scaled):
        product = product.inner

    return not isinstance(product, Product)


def product_trace_residual(f: HoloSpec, g: HoloSpec, N: int = DEFAULT_GRID_SIZE) -> float:
    """max_k |(fg)*(t_k) - f*(t_k) g*(t_k)| using exact boundary restrictions.

    Only pairs with a closed-form product (see closed_form_product) test anything: mixed
    taylor and blaschke pairs fall back to Product, whose evaluation is f(z) g(z), so
    their residual is zero up to the rounding of a scalar factor.
    """
    for spec in (f, g):
        if not spec.closed_disk_analytic:
            raise UnsupportedVariantError(f"{type(spec).__name__} has no pointwise boundary restriction")

    boundary = np.exp(1j * grid_angles(N))
    product = np.asarray(multiply(f, g).evaluate(boundary))
    return float(np.max(np.abs(product - np.asarray(f.evaluate(boundary)) * np.asarray(g.evaluate(boundary)))))


def approx_identity_curve(g: UnitGridFunction, radii: Sequence[float]) -> List[float]:
    """||P_r * g - g||_1 for each radius, always through the spectral path (no aliasing)."""
    radii = check_radii(radii)
    return [norm(convolve_poisson(g, r, Method.SPECTRAL) - g, Norm.L1) for r in radii]


@dataclass
class RoundTrip:
    error: float
    bound: float
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.error <= self.bound


def surjectivity_roundtrip(c: SpectralFunction, r: float = 0.9999, N: int = 1024) -> RoundTrip:
    """Boundary function -> Poisson extension -> dilate at r, compared with the boundary
    function in grid L1. The error is bounded by sum_n |c_n| (1 - r^{|n|})."""
    boundary = synthesize(c, N)
    extension = UnitGridFunction([poisson_extend(c, DiskPoint(r, s)) for s in boundary.angles])

    error = norm(extension - boundary, Norm.L1)
    bound = float(np.sum(np.abs(c.coeffs) * (1 - np.power(r, np.abs(c.frequencies))))) + 1e-12
    return RoundTrip(error, bound, {"N": N, "r": r, "M": c.M})


def isometry_shrinkage(f: HoloSpec, r_max_values: Sequence[float], N: int = DEFAULT_GRID_SIZE) -> List[float]:
    """1 - sup_T estimate for traces taken at growing r_max; shrinks to 0 for inner functions."""
    shrinkage = []
    for r_max in check_radii(r_max_values):
        result = radial_trace(f, [r_max / 2, r_max], N)
        shrinkage.append(1 - isometry_report(f, result.trace).sup_circle)

    return shrinkage

