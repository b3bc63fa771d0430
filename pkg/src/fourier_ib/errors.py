from __future__ import annotations


class FourierIBError(Exception):
    """Base class for every error raised by this package."""


class GridMismatchError(FourierIBError):
    pass


class GeometryError(FourierIBError):
    pass


class ConfigError(FourierIBError):
    pass


class NumericalInstabilityError(FourierIBError):
    """Raised when the prognostic field stops being finite."""

    def __init__(self, message: str, *, step: int | None = None, time: float | None = None) -> None:
        super().__init__(message)
        self.step = step
        self.time = time


class SnapshotFormatError(FourierIBError):
    pass


class ConvergenceSetupError(FourierIBError):
    pass
