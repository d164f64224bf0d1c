from os import getenv

from dotenv import load_dotenv

load_dotenv()


def _float(name: str, default: float) -> float:
    return float(getenv(name, default))


def _int(name: str, default: int) -> int:
    return int(getenv(name, default))


LOG_FILE: str = getenv("HARDY_LOG_FILE", "hardy.log")
LOG_LEVEL: str = getenv("HARDY_LOG_LEVEL", "INFO")

DEFAULT_GRID_SIZE: int = _int("HARDY_GRID_SIZE", 4096)
SEED: int = _int("HARDY_SEED", 20240917)

# Tolerances: spectrally exact identities vs. cancellation-prone ones
EXACT_TOL: float = _float("HARDY_EXACT_TOL", 1e-10)
CANCELLATION_TOL: float = _float("HARDY_CANCELLATION_TOL", 1e-6)
FORM_ULPS: int = _int("HARDY_FORM_ULPS", 4)
ALIASING_TOL: float = 1e-6

RADII_SCHEDULE_LENGTH: int = _int("HARDY_RADII_SCHEDULE_LENGTH", 14)
DISK_GRID_LEVELS: int = _int("HARDY_DISK_GRID_LEVELS", 14)

IRLS_MAX_ITER: int = _int("HARDY_IRLS_MAX_ITER", 200)
IRLS_TOL: float = _float("HARDY_IRLS_TOL", 1e-10)
IRLS_EPS: float = _float("HARDY_IRLS_EPS", 1e-8)
IRLS_DAMPING: float = _float("HARDY_IRLS_DAMPING", 1e-10)

# Largest |n| a trig or trig2d spec may name, and the largest --n
MAX_FREQUENCY: int = _int("HARDY_MAX_FREQUENCY", 2**16)
MAX_GRID_SIZE: int = _int("HARDY_MAX_GRID_SIZE", 2**24)

MACHINE_DIGITS = 17
PLAIN_DIGITS = 6

COG_EXTENSIONS: list[str] = getenv("HARDY_COG_EXTENSIONS", "kernel,extension,boundary,density,selftest").split(",")
