"""
Closed-form and spectral evaluation of the Poisson kernel

    P_r(theta) = (1 - r^2) / (1 - 2 r cos(theta) + r^2)

and of the Herglotz kernel g(t, z) = (1 + e^{-it} z) / (1 - e^{-it} z), plus a
verifier for the five kernel properties that make (P_r) an approximate identity.
"""

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from lib.circle import SpectralFunction, grid_angles
from lib.config import EXACT_TOL, FORM_ULPS
from lib.errors import DomainError
from lib.logger import logger
from lib.utils import EPS, ArrayLike, check_finite, check_radius, normalize_angle, rounding_units


@dataclass(frozen=True)
class DiskPoint:
    """Interior point z = r e^{i sigma} of the unit disk."""

    r: float
    sigma: float = 0.0

    def __post_init__(self):
        check_radius(self.r)
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "sigma", normalize_angle(self.sigma))

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        if not cmath.isfinite(z):
            raise DomainError(f"point must be finite, got {z}")

        return cls(abs(z), cmath.phase(z))

    @property
    def z(self) -> complex:
        return cmath.rect(self.r, self.sigma)


class PropertyId(str, Enum):
    MONOTONE = "i"
    POSITIVE = "ii"
    SYMMETRIC = "iii"
    NORMALIZED = "iv"
    CONCENTRATED = "v"


@dataclass
class PropertyReport:
    property_id: PropertyId
    max_violation: float
    passed: bool = field(init=False)
    metadata: Dict[str, Any] = field(default_factory=dict)
    value: Optional[float] = None

    def __post_init__(self):
        self.passed = bool(self.max_violation <= self.metadata["tol"])


def _denominator(r: float, theta: ArrayLike) -> ArrayLike:
    # 1 - 2r cos(theta) + r^2 without cancellation near theta = 0, r -> 1
    half = np.sin(np.asarray(theta, dtype=float) / 2)
    return (1 - r) ** 2 + 4 * r * half * half


def kernel_squared_modulus(r: float, theta: ArrayLike) -> ArrayLike:
    """The second closed form (1 - |r e^{i theta}|^2) / |1 - r e^{i theta}|^2.

    The real part of 1 - r e^{i theta} is written as (1 - r) + 2 r sin^2(theta / 2)
    so that the modulus keeps its digits when r -> 1.
    """
    check_radius(r)
    theta = np.asarray(theta, dtype=float)
    half = np.sin(theta / 2)
    re = (1 - r) + 2 * r * half * half
    im = r * np.sin(theta)
    return (1 - r) * (1 + r) / (re * re + im * im)


def eval_kernel(r: float, theta: ArrayLike, verify: bool = False) -> ArrayLike:
    """Evaluates the Poisson kernel P_r(theta) in its rational-in-cos form.

    Args:
        r (float): Radius in [0, 1).
        theta (float | np.ndarray): Angle(s) in radians.
        verify (bool, optional): Also evaluate the squared-modulus form and log a warning
            if the two forms disagree beyond their rounding budget. Defaults to False.

    Returns:
        float | np.ndarray: Nonnegative kernel value(s), same shape as theta.
    """
    check_radius(r)
    check_finite(theta, "theta")

    value = (1 - r) * (1 + r) / _denominator(r, theta)

    if verify:
        units = np.max(rounding_units(value, kernel_squared_modulus(r, theta)))
        if units > 2 * FORM_ULPS:
            logger.warning(f"Kernel closed forms disagree by {units:.1f} rounding units at r={r}")

    if np.ndim(value) == 0:
        return float(value)

    return value


def kernel_form_discrepancy(r: float, theta: ArrayLike) -> float:
    """Largest disagreement of the two closed forms, in units of eps * value.

    Each form is budgeted FORM_ULPS units, so agreement means a result <= 2 * FORM_ULPS.
    """
    return float(np.max(rounding_units(eval_kernel(r, theta), kernel_squared_modulus(r, theta))))


def eval_kernel_at(z: DiskPoint, t: ArrayLike) -> ArrayLike:
    """P_z(t) := P_r(sigma - t)."""
    return eval_kernel(z.r, z.sigma - np.asarray(t, dtype=float))


def kernel_spectrum(r: float, M: int) -> SpectralFunction:
    """Fourier coefficients r^{|n|}, |n| <= M, of P_r."""
    check_radius(r)
    if M < 0:
        raise DomainError(f"M must be >= 0, got {M}")

    n = np.arange(-M, M + 1)
    return SpectralFunction(np.power(r, np.abs(n)).astype(complex))


def herglotz_eval(z: DiskPoint, t: ArrayLike) -> ArrayLike:
    """Evaluates g(t, z) = (1 + e^{-it} z) / (1 - e^{-it} z).

    The real part equals P_z(t); the imaginary part is the conjugate Poisson kernel
    2 r sin(sigma - t) / (1 - 2 r cos(sigma - t) + r^2).
    """
    check_finite(t, "t")
    phi = z.sigma - np.asarray(t, dtype=float)
    w = z.r * np.exp(1j * phi)

    half = np.sin(phi / 2)
    one_minus_w = ((1 - z.r) + 2 * z.r * half * half) - 1j * z.r * np.sin(phi)
    value = (1 + w) / one_minus_w

    if np.ndim(value) == 0:
        return complex(value)

    return value


def _grid_tol(values: np.ndarray) -> float:
    return FORM_ULPS * EPS * float(np.max(np.abs(values)))


def verify_kernel_properties(
    r: float,
    delta: float,
    N: int,
    tol: Optional[float] = None,
) -> List[PropertyReport]:
    """Checks the five properties of the Poisson kernel on the uniform grid.

    (i) decreasing on (0, pi), (ii) nonnegative, (iii) even, (iv) unit mean,
    (v) sup over |t| >= delta, which by (i) and (iii) is P_r(delta). The value of (v)
    is reported so callers can tabulate its decay in r.

    Args:
        r (float): Radius in [0, 1).
        delta (float): Cut-off angle in (0, pi).
        N (int): Grid size, at least 16.
        tol (float, optional): Tolerance for the normalization check, on top of the
            trapezoid aliasing bound 2 r^N / (1 - r^N). Defaults to EXACT_TOL.

    Returns:
        list[PropertyReport]: One report per property, in order i..v.
    """
    check_radius(r)
    if not 0 < delta < math.pi:
        raise DomainError(f"delta must lie in (0, pi), got {delta}")
    if N < 16:
        raise DomainError(f"N must be >= 16, got {N}")

    tol = EXACT_TOL if tol is None else tol
    t = grid_angles(N)
    values = eval_kernel(r, t)
    base = {"N": N, "r": r, "delta": delta}
    rounding = _grid_tol(values)

    inside = values[(t > 0) & (t < math.pi)]
    rises = np.diff(inside)
    monotone = float(max(0.0, np.max(rises))) if rises.size else 0.0

    positive = float(max(0.0, -np.min(values)))

    symmetric = float(np.max(np.abs(values - eval_kernel(r, -t))))

    aliasing = 2 * r**N / (1 - r**N)
    mean = float(np.mean(values))

    peak = eval_kernel(r, delta)
    tail = values[np.abs(t) >= delta]
    overshoot = float(max(0.0, np.max(tail) - peak))

    reports = [
        PropertyReport(PropertyId.MONOTONE, monotone, {**base, "tol": rounding}),
        PropertyReport(PropertyId.POSITIVE, positive, {**base, "tol": 0.0}),
        PropertyReport(PropertyId.SYMMETRIC, symmetric, {**base, "tol": rounding}),
        PropertyReport(PropertyId.NORMALIZED, abs(mean - 1), {**base, "tol": tol + aliasing}, value=mean),
        PropertyReport(PropertyId.CONCENTRATED, overshoot, {**base, "tol": rounding}, value=peak),
    ]

    for report in reports:
        if not report.passed:
            logger.warning(f"Kernel property {report.property_id.value} failed: {report.max_violation:.3e}")

    return reports


def decay_table(radii: List[float], delta: float, N: int) -> List[tuple]:
    """Property-v values along a radius schedule: (r, sup_{|t| >= delta} P_r(t))."""
    table = []
    for r in radii:
        concentrated = verify_kernel_properties(r, delta, N)[-1]
        table.append((r, concentrated.value))

    return table

