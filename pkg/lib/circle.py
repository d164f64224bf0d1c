"""
Functions on the unit circle T: uniform samples (UnitGridFunction) and two-sided
spectra (SpectralFunction), transforms between them, grid norms, and Poisson
convolution by quadrature and by spectral multiplier.

All modules share one grid: t_k = -pi + 2 pi k / N, k = 0..N-1.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Mapping, Protocol, Sequence, Union

import numpy as np

from lib.config import ALIASING_TOL
from lib.errors import AliasingError, DomainError
from lib.logger import logger
from lib.utils import check_finite, check_radius


def grid_angles(N: int) -> np.ndarray:
    if N < 2:
        raise DomainError(f"grid size must be >= 2, got {N}")

    return -math.pi + 2 * math.pi * np.arange(N) / N


@dataclass
class UnitGridFunction:
    """N uniform samples of a function on T, sample k taken at t_k = -pi + 2 pi k / N."""

    samples: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.ndim != 1 or self.samples.size < 2:
            raise DomainError(f"need at least 2 samples in a 1-D array, got shape {self.samples.shape}")
        check_finite(self.samples, "samples")

    @property
    def N(self) -> int:
        return self.samples.size

    @property
    def angles(self) -> np.ndarray:
        return grid_angles(self.N)

    def _other(self, other) -> Union[complex, np.ndarray]:
        if isinstance(other, UnitGridFunction):
            if other.N != self.N:
                raise DomainError(f"grid sizes differ: {self.N} vs {other.N}")
            return other.samples

        return other

    def __add__(self, other) -> "UnitGridFunction":
        return UnitGridFunction(self.samples + self._other(other))

    def __sub__(self, other) -> "UnitGridFunction":
        return UnitGridFunction(self.samples - self._other(other))

    def __mul__(self, other) -> "UnitGridFunction":
        return UnitGridFunction(self.samples * self._other(other))

    __radd__ = __add__
    __rmul__ = __mul__


@dataclass
class SpectralFunction:
    """Two-sided Fourier coefficients c_n for n = -M..M, stored in that order."""

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.ndim != 1 or self.coeffs.size % 2 != 1:
            raise DomainError(f"need 2M + 1 coefficients, got shape {self.coeffs.shape}")
        check_finite(self.coeffs, "coeffs")

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, complex], M: int = 0) -> "SpectralFunction":
        M = max([M, *(abs(n) for n in coeffs)])
        data = np.zeros(2 * M + 1, dtype=complex)
        for n, c in coeffs.items():
            data[n + M] = c

        return cls(data)

    @property
    def M(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def frequencies(self) -> np.ndarray:
        return np.arange(-self.M, self.M + 1)

    @property
    def is_analytic(self) -> bool:
        return not np.any(self.coeffs[: self.M])

    @property
    def bandwidth(self) -> int:
        """Largest |n| with c_n != 0 (0 for the zero function)."""
        nonzero = np.flatnonzero(self.coeffs)
        if nonzero.size == 0:
            return 0

        return int(np.max(np.abs(self.frequencies[nonzero])))

    def coefficient(self, n: int) -> complex:
        if abs(n) > self.M:
            return 0j

        return complex(self.coeffs[n + self.M])

    def padded(self, M: int) -> "SpectralFunction":
        if M < self.M:
            raise DomainError(f"cannot pad to M={M} < {self.M}")

        data = np.zeros(2 * M + 1, dtype=complex)
        data[M - self.M : M + self.M + 1] = self.coeffs
        return SpectralFunction(data)

    def evaluate(self, t: Union[float, np.ndarray]) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.exp(1j * np.multiply.outer(t, self.frequencies)) @ self.coeffs

    def __add__(self, other: "SpectralFunction") -> "SpectralFunction":
        M = max(self.M, other.M)
        return SpectralFunction(self.padded(M).coeffs + other.padded(M).coeffs)

    def __mul__(self, scalar: complex) -> "SpectralFunction":
        return SpectralFunction(self.coeffs * scalar)

    __rmul__ = __mul__


class Holomorphic(Protocol):
    closed_disk_analytic: bool

    def evaluate(self, z): ...


class BoundarySpec(ABC):
    """Declarative description of a test function on T."""

    @abstractmethod
    def evaluate(self, t: np.ndarray) -> np.ndarray:
        pass


@dataclass
class TrigBoundary(BoundarySpec):
    spectrum: SpectralFunction

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        return self.spectrum.evaluate(t)


@dataclass
class StepBoundary(BoundarySpec):
    """Piecewise-constant function: values[j] holds on [breaks[j], breaks[j + 1]),
    the last value wraps around to the first break. Jumps take the right limit."""

    breaks: Sequence[float]
    values: Sequence[complex]

    def __post_init__(self):
        self.breaks = np.asarray(self.breaks, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        check_finite(self.breaks, "breaks")
        if self.breaks.size == 0 or self.breaks.size != self.values.size:
            raise DomainError("step needs one value per jump location")
        if np.any(self.breaks <= -math.pi) or np.any(self.breaks > math.pi):
            raise DomainError("jump locations must lie in (-pi, pi]")
        if np.any(np.diff(self.breaks) <= 0):
            raise DomainError("jump locations must be strictly increasing")
        check_finite(self.values, "values")

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        # Angles below the first break belong to the last (wrapping) arc
        arc = np.searchsorted(self.breaks, t, side="right") - 1
        return self.values[arc]


@dataclass
class Restriction(BoundarySpec):
    """Restriction to T of a function analytic across the closed disk (taylor/blaschke)."""

    function: Holomorphic

    def __post_init__(self):
        if not self.function.closed_disk_analytic:
            raise DomainError("only functions analytic on the closed disk restrict pointwise to T")

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        return np.asarray(self.function.evaluate(np.exp(1j * np.asarray(t, dtype=float))), dtype=complex)


def sample(spec: BoundarySpec, N: int) -> UnitGridFunction:
    t = grid_angles(N)
    return UnitGridFunction(spec.evaluate(t), {"N": N})


def analyze(f: UnitGridFunction) -> SpectralFunction:
    """Discrete Fourier analysis c_n = (1/N) sum_k f_k e^{-i n t_k}, |n| <= N/2 - 1 (N even)."""
    N = f.N
    M = N // 2 - 1 if N % 2 == 0 else (N - 1) // 2
    n = np.arange(-M, M + 1)
    # e^{-i n t_k} = (-1)^n e^{-2 pi i n k / N} on the shifted grid
    spectrum = np.fft.fft(f.samples) / N
    return SpectralFunction(spectrum[n % N] * np.where(n % 2 == 0, 1, -1))


def synthesize(c: SpectralFunction, N: int) -> UnitGridFunction:
    if N <= 2 * c.M:
        raise AliasingError(f"N={N} cannot carry frequencies up to M={c.M}; need N > {2 * c.M}")

    n = c.frequencies
    bins = np.zeros(N, dtype=complex)
    bins[n % N] = c.coeffs * np.where(n % 2 == 0, 1, -1)
    return UnitGridFunction(np.fft.ifft(bins) * N, {"N": N})


def dilate(c: SpectralFunction, r: float) -> SpectralFunction:
    """Applies the Poisson multiplier r^{|n|}."""
    check_radius(r)
    return SpectralFunction(c.coeffs * np.power(r, np.abs(c.frequencies)))


class Norm(str, Enum):
    L1 = "L1"
    SUP = "SUP"


def norm(f: UnitGridFunction, which: Norm = Norm.L1) -> float:
    """Grid norms with the normalized measure dt / 2 pi.

    L1 is the trapezoid rule applied to |f|; SUP is the largest sample modulus and
    therefore only a lower bound for the true supremum.
    """
    magnitudes = np.abs(f.samples)
    if Norm(which) is Norm.L1:
        return float(np.mean(magnitudes))

    return float(np.max(magnitudes))


class Method(str, Enum):
    QUADRATURE = "quadrature"
    SPECTRAL = "spectral"


def convolve_poisson(f: UnitGridFunction, r: float, method: Method = Method.SPECTRAL) -> UnitGridFunction:
    """P_r * f on the grid of f.

    quadrature: out_j = (1/N) sum_k f_k P_r(t_j - t_k), a circular convolution done
    with the FFT of the kernel samples. spectral: analyze, scale c_n by r^{|n|},
    synthesize. A quadrature run with r > 1 - 8/N sets metadata["aliasing_warning"].
    """
    # kernel builds on this module, so import at call time
    from lib.kernel import eval_kernel

    check_radius(r)
    N = f.N
    metadata: Dict[str, Any] = {"N": N, "r": r, "method": Method(method).value}

    if Method(method) is Method.QUADRATURE:
        # Lags wrapped into [-pi, pi) keep the kernel peak away from 2 pi
        m = np.arange(N)
        lags = 2 * math.pi * np.where(m < (N + 1) // 2, m, m - N) / N
        kernel = eval_kernel(r, lags)
        out = np.fft.ifft(np.fft.fft(f.samples) * np.fft.fft(kernel)) / N

        bound = 2 * r**N / (1 - r**N)
        metadata["aliasing_bound"] = bound
        metadata["aliasing_warning"] = bool(r > 1 - 8 / N or bound > ALIASING_TOL)
        if metadata["aliasing_warning"]:
            logger.warning(f"Quadrature convolution under-resolved: r={r}, N={N}, aliasing bound {bound:.2e}")

        return UnitGridFunction(out, metadata)

    smoothed = synthesize(dilate(analyze(f), r), N)
    smoothed.metadata = metadata
    return smoothed
