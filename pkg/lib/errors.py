from typing import Any, Optional, Sequence


class HardyError(Exception):
    pass


class DomainError(HardyError, ValueError):
    """An input lies outside the domain of the operation (e.g. r >= 1)."""


class AliasingError(DomainError):
    pass


class ConditioningError(DomainError):
    pass


class UnsupportedVariantError(HardyError, TypeError):
    pass


class SpecError(HardyError, ValueError):
    """A JSON function spec could not be parsed.

    Args:
        field (str): Path of the offending field, e.g. ``coeffs[2]``.
        message (str): What is wrong with it.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class VerificationFailure(HardyError):
    def __init__(self, message: str, reports: Optional[Sequence[Any]] = None):
        self.reports = list(reports or [])
        super().__init__(message)
