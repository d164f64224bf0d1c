"""
Interior extension of boundary data by the Poisson integral

    F(z) = 1/(2 pi) int f(e^{it}) P_z(t) dt,

its reproduction of analytic functions (directly for functions analytic on the
closed disk, through the dilate f_rho(z) = f(rho z) otherwise), a mean-value
harmonicity check, and the tensor-product extension on the bidisk.

Only the unit disk is handled. A disk D(a, R) reduces to it through
z -> (z - a) / R, see `to_unit_disk`.
"""

import cmath
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P

from lib.circle import BoundarySpec, SpectralFunction, UnitGridFunction, grid_angles, sample
from lib.config import DEFAULT_GRID_SIZE
from lib.errors import DomainError
from lib.kernel import DiskPoint, eval_kernel, eval_kernel_at
from lib.logger import logger
from lib.utils import EPS, check_finite, check_radius


class HoloSpec(ABC):
    """Declarative bounded holomorphic function on the disk."""

    @property
    def closed_disk_analytic(self) -> bool:
        return True

    @abstractmethod
    def evaluate(self, z):
        pass

    def __call__(self, z):
        return self.evaluate(z)


def _scalar(value):
    if np.ndim(value) == 0:
        return complex(value)

    return value


@dataclass
class Taylor(HoloSpec):
    coeffs: Sequence[complex]

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise DomainError("taylor spec needs at least one coefficient")
        check_finite(self.coeffs, "coeffs")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def evaluate(self, z):
        return _scalar(P.polyval(np.asarray(z, dtype=complex), self.coeffs))


@dataclass
class Blaschke(HoloSpec):
    """Finite Blaschke product prod_a (a - z) / (1 - conj(a) z)."""

    zeros: Sequence[complex]

    def __post_init__(self):
        self.zeros = np.asarray(self.zeros, dtype=complex).reshape(-1)
        check_finite(self.zeros, "zeros")
        if np.any(np.abs(self.zeros) >= 1):
            raise DomainError(f"blaschke zeros must lie inside the disk, got {self.zeros}")

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        value = np.ones_like(z)
        for a in self.zeros:
            value = value * (a - z) / (1 - np.conj(a) * z)

        return _scalar(value)


@dataclass
class Product(HoloSpec):
    factors: Sequence[HoloSpec]

    def __post_init__(self):
        if not self.factors:
            raise DomainError("product spec needs at least one factor")

    @property
    def closed_disk_analytic(self) -> bool:
        return all(factor.closed_disk_analytic for factor in self.factors)

    def evaluate(self, z):
        value = np.ones_like(np.asarray(z, dtype=complex))
        for factor in self.factors:
            value = value * factor.evaluate(z)

        return _scalar(value)


@dataclass
class Scaled(HoloSpec):
    factor: complex
    inner: HoloSpec

    def __post_init__(self):
        self.factor = complex(self.factor)
        check_finite(self.factor, "factor")

    @property
    def closed_disk_analytic(self) -> bool:
        return self.inner.closed_disk_analytic

    def evaluate(self, z):
        return _scalar(self.factor * np.asarray(self.inner.evaluate(z)))


@dataclass
class SingularInner(HoloSpec):
    """exp(-mass (1 + u) / (1 - u)) with u = e^{-i angle} z.

    Bounded by 1 in the disk with unimodular boundary values, but discontinuous at
    the boundary point e^{i angle}, where it cannot be evaluated.
    """

    mass: float = 1.0
    angle: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.mass) or self.mass <= 0:
            raise DomainError(f"singular mass must be positive, got {self.mass}")
        check_finite(self.angle, "angle")

    @property
    def closed_disk_analytic(self) -> bool:
        return False

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) > 1):
            raise DomainError("singular inner function is only defined on the closed disk")

        u = z * cmath.exp(-1j * self.angle)
        if np.any(np.abs(1 - u) <= EPS):
            raise DomainError(f"singular inner function has no value at e^(i{self.angle})")

        return _scalar(np.exp(-self.mass * (1 + u) / (1 - u)))


def multiply(f: HoloSpec, g: HoloSpec) -> HoloSpec:
    """Algebraic product of two specs, kept in closed form where the variants allow it."""
    if isinstance(f, Taylor) and isinstance(g, Taylor):
        return Taylor(P.polymul(f.coeffs, g.coeffs))
    if isinstance(f, Blaschke) and isinstance(g, Blaschke):
        return Blaschke(np.concatenate([f.zeros, g.zeros]))
    if isinstance(f, Scaled):
        return Scaled(f.factor, multiply(f.inner, g))
    if isinstance(g, Scaled):
        return Scaled(g.factor, multiply(f, g.inner))

    return Product([f, g])


Boundary = Union[UnitGridFunction, SpectralFunction, BoundarySpec]


def poisson_extend(boundary: Boundary, z: DiskPoint, N: int = DEFAULT_GRID_SIZE) -> complex:
    """Evaluates the Poisson integral of boundary data at an interior point.

    Grid data is integrated with the trapezoid rule. Spectral data is summed as
    sum_n c_n r^{|n|} e^{i n sigma}, by Horner's rule in w = z for n >= 0 and in
    conj(z) for n < 0. Declarative boundary specs are sampled on an N-point grid first.

    Args:
        boundary (UnitGridFunction | SpectralFunction | BoundarySpec): Boundary data.
        z (DiskPoint): Evaluation point.
        N (int, optional): Grid size for BoundarySpec input. Defaults to DEFAULT_GRID_SIZE.

    Returns:
        complex: F(z).
    """
    if isinstance(boundary, BoundarySpec):
        boundary = sample(boundary, N)

    if isinstance(boundary, UnitGridFunction):
        weights = eval_kernel_at(z, boundary.angles)
        return complex(np.mean(boundary.samples * weights))

    M = boundary.M
    w = z.z
    analytic = P.polyval(w, boundary.coeffs[M:])
    conjugate = P.polyval(np.conj(w), np.concatenate([[0], boundary.coeffs[M - 1 :: -1]])) if M else 0
    return complex(analytic + conjugate)


def extend_on_points(boundary: Boundary, points: Sequence[DiskPoint], N: int = DEFAULT_GRID_SIZE) -> np.ndarray:
    if isinstance(boundary, BoundarySpec):
        boundary = sample(boundary, N)

    return np.array([poisson_extend(boundary, z) for z in points], dtype=complex)


def to_unit_disk(z: complex, a: complex = 0, R: float = 1.0) -> DiskPoint:
    """Reduces a point of D(a, R) to the unit disk, where the Poisson formula reads
    u(z) = 1/(2 pi) int u(a + R e^{it}) P_{rho/R}(sigma - t) dt with z = a + rho e^{i sigma}."""
    if not R > 0:
        raise DomainError(f"disk radius must be positive, got {R}")

    return DiskPoint.from_complex((z - a) / R)


@dataclass
class ReproductionResult:
    residual: float
    exact: complex
    integral: complex
    metadata: Dict[str, Any] = field(default_factory=dict)


def reproduce_interior(f: HoloSpec, z: DiskPoint, rho: float = 1.0, N: int = DEFAULT_GRID_SIZE) -> ReproductionResult:
    """Compares f(z) with the Poisson integral of the dilate f_rho against P_{r/rho}.

        f(r e^{i sigma}) = 1/(2 pi) int f(rho e^{it}) P_{r/rho}(sigma - t) dt

    rho = 1 needs f analytic across the closed disk; any other bounded holomorphic
    spec must use rho < 1.

    Args:
        f (HoloSpec): The function to reproduce.
        z (DiskPoint): Interior point, z.r < rho.
        rho (float, optional): Dilation in (z.r, 1]. Defaults to 1.0.
        N (int, optional): Quadrature grid size. Defaults to DEFAULT_GRID_SIZE.

    Returns:
        ReproductionResult: |f(z) - integral| with both values and the grid size.
    """
    if not z.r < rho <= 1:
        raise DomainError(f"dilation must lie in (|z|, 1] = ({z.r}, 1], got {rho}")
    if rho == 1 and not f.closed_disk_analytic:
        raise DomainError(f"{type(f).__name__} is not analytic on the closed disk; use rho < 1")

    t = grid_angles(N)
    dilate = np.asarray(f.evaluate(rho * np.exp(1j * t)), dtype=complex)
    weights = eval_kernel(z.r / rho, z.sigma - t)
    integral = complex(np.mean(dilate * weights))
    exact = complex(f.evaluate(z.z))

    return ReproductionResult(abs(exact - integral), exact, integral, {"N": N, "rho": rho, "r": z.r})


def check_harmonic(boundary: SpectralFunction, a: DiskPoint, radius: float, M: int = 64) -> float:
    """Mean-value residual |F(a) - (1/M) sum_j F(a + radius e^{2 pi i j / M})| of the
    Poisson extension F, which vanishes when F is harmonic."""
    if not radius > 0 or a.r + radius >= 1:
        raise DomainError(f"circle of radius {radius} around {a.z} is not contained in the disk")
    if M < 16:
        raise DomainError(f"need at least 16 points on the circle, got {M}")
    if M < 4 * boundary.bandwidth:
        logger.warning(f"Mean-value circle has {M} points for boundary bandwidth {boundary.bandwidth}")

    circle = a.z + radius * np.exp(2j * math.pi * np.arange(M) / M)
    values = [poisson_extend(boundary, DiskPoint.from_complex(p)) for p in circle]

    return abs(poisson_extend(boundary, a) - complex(np.mean(values)))


@dataclass
class BidiskSpectrum:
    """Coefficients c_{m,n}, |m| <= M1, |n| <= M2, indexed [m + M1, n + M2]."""

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.ndim != 2 or self.coeffs.shape[0] % 2 != 1 or self.coeffs.shape[1] % 2 != 1:
            raise DomainError(f"need a (2 M1 + 1) x (2 M2 + 1) array, got shape {self.coeffs.shape}")
        check_finite(self.coeffs, "coeffs")

    @classmethod
    def from_dict(cls, coeffs: Mapping[Tuple[int, int], complex]) -> "BidiskSpectrum":
        M1 = max([0, *(abs(m) for m, _ in coeffs)])
        M2 = max([0, *(abs(n) for _, n in coeffs)])
        data = np.zeros((2 * M1 + 1, 2 * M2 + 1), dtype=complex)
        for (m, n), c in coeffs.items():
            data[m + M1, n + M2] = c

        return cls(data)

    @property
    def M1(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    @property
    def M2(self) -> int:
        return (self.coeffs.shape[1] - 1) // 2


def _multipliers(z: DiskPoint, M: int) -> np.ndarray:
    n = np.arange(-M, M + 1)
    return np.power(z.r, np.abs(n)) * np.exp(1j * n * z.sigma)


def bidisk_extend(spec: BidiskSpectrum, z1: DiskPoint, z2: DiskPoint) -> complex:
    """sum_{m,n} c_{m,n} r1^{|m|} r2^{|n|} e^{i m sigma1} e^{i n sigma2}."""
    check_radius(z1.r, "z1.r")
    check_radius(z2.r, "z2.r")
    return complex(_multipliers(z1, spec.M1) @ spec.coeffs @ _multipliers(z2, spec.M2))


def bidisk_quadrature(spec: BidiskSpectrum, z1: DiskPoint, z2: DiskPoint, N1: int = 256, N2: int = 256) -> complex:
    """Iterated trapezoid rule against P_{z1}(s) P_{z2}(t) on an N1 x N2 torus grid."""
    s, t = grid_angles(N1), grid_angles(N2)
    E1 = np.exp(1j * np.multiply.outer(s, np.arange(-spec.M1, spec.M1 + 1)))
    E2 = np.exp(1j * np.multiply.outer(t, np.arange(-spec.M2, spec.M2 + 1)))
    boundary = E1 @ spec.coeffs @ E2.T

    return complex(eval_kernel_at(z1, s) @ boundary @ eval_kernel_at(z2, t) / (N1 * N2))


def polar_points(radii: Sequence[float], angles: int) -> List[DiskPoint]:
    return [DiskPoint(r, sigma) for r in radii for sigma in grid_angles(angles)]
