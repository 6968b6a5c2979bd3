"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class PQuadError(Exception):
    """Base class for every error raised by ``pquad``."""


class ParameterError(PQuadError, ValueError):
    """A parameter lies outside its admissible range."""


class DomainError(PQuadError, ValueError):
    """A value has no real result (e.g. an even root of a negative number)."""


class CertificationError(PQuadError):
    """The interval is not inside the declared P-certification domain."""


class EvaluationError(PQuadError, ArithmeticError):
    """A sampled function returned a non-finite value."""

    def __init__(self, point: float, value: float) -> None:
        super().__init__(f"non-finite value {value!r} at x={point!r}")
        self.point = point
        self.value = value


class IntegrationError(PQuadError, ArithmeticError):
    """The adaptive oracle did not converge."""

    def __init__(self, message: str, subinterval: tuple[float, float]) -> None:
        super().__init__(f"{message} on [{subinterval[0]!r}, {subinterval[1]!r}]")
        self.subinterval = subinterval
