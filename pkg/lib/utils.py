import math
from typing import Union

import numpy as np

from lib.errors import DomainError

ArrayLike = Union[float, np.ndarray]

EPS = float(np.finfo(float).eps)


def normalize_angle(theta: float) -> float:
    """Maps an angle into (-pi, pi].

    Args:
        theta (float): Angle in radians.

    Returns:
        float: The equivalent angle in (-pi, pi].
    """
    if not math.isfinite(theta):
        raise DomainError(f"angle must be finite, got {theta}")

    wrapped = math.remainder(theta, 2 * math.pi)
    if wrapped <= -math.pi:
        wrapped = math.pi

    return wrapped


def check_radius(r: float, name: str = "r") -> float:
    if not math.isfinite(r) or not 0 <= r < 1:
        raise DomainError(f"{name} must lie in [0, 1), got {r}")

    return float(r)


def check_finite(values: ArrayLike, name: str = "values"):
    if not np.all(np.isfinite(values)):
        raise DomainError(f"{name} must be finite")


def rounding_units(a: ArrayLike, b: ArrayLike) -> ArrayLike:
    """Distance between a and b in units of eps * max(|a|, |b|)."""
    scale = EPS * np.maximum(np.abs(a), np.abs(b))
    diff = np.abs(np.asarray(a) - np.asarray(b))
    return np.where(diff == 0, 0.0, diff / np.where(scale == 0, EPS, scale))


def format_number(value: float, digits: int) -> str:
    text = f"{value:.{digits}g}"
    # Keep floats looking like floats in tables ("1.0", not "1")
    if text.lstrip("-").isdigit():
        text += ".0"

    return text
