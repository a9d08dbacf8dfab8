"""
Exception hierarchy for rsvd.

Every error raised by the library derives from RSVDError and from the
closest builtin, so callers may catch either.
"""

from typing import Optional


class RSVDError(Exception):
    """Base class for all rsvd errors."""


class ConfigError(RSVDError, ValueError):
    """Invalid run configuration."""


class SingularInput(RSVDError, ValueError):
    """Group element is numerically rank-deficient."""


class BadWHat(RSVDError, ValueError):
    """Fixed vector w_hat does not satisfy I w_hat = w_hat."""


class NonRealTrace(RSVDError, ArithmeticError):
    """Trace of a matrix power has a non-negligible imaginary part."""


class BadMu(RSVDError, ValueError):
    """Coupling mu must be strictly positive."""


class NonGenericSpectrum(RSVDError, ValueError):
    """Spectral data has (near-)coincident entries."""


class SingularCauchy(RSVDError, ArithmeticError):
    """Cauchy-like moduli system is too ill-conditioned to solve."""


class OffSlice(RSVDError, ValueError):
    """Triple does not lie on the gauge slice expected by extraction."""


class DomainViolation(RSVDError, ValueError):
    """A point lies outside the open domain of a formula.

    Attributes:
        inequality: Human readable name of the first violated inequality
    """

    def __init__(self, message: str, inequality: Optional[str] = None):
        super().__init__(message)
        self.inequality = inequality


class StepTooLarge(RSVDError, ArithmeticError):
    """Conserved-quantity drift exceeded the diagnostic threshold."""

    def __init__(self, message: str, drift: float):
        super().__init__(message)
        self.drift = drift


class DomainExit(RSVDError, ArithmeticError):
    """Integrated state left the domain of the Hamiltonian."""

    def __init__(self, time: float, inequality: Optional[str] = None):
        super().__init__(f"trajectory left the domain at t={time:.6g}"
                         + (f" ({inequality})" if inequality else ""))
        self.time = time
        self.inequality = inequality


class DiscontinuousAngle(RSVDError, ArithmeticError):
    """Sampled angle jumped by more than the unwrapping limit between steps."""

    def __init__(self, time: float, jump: float):
        super().__init__(f"angle jumped by {jump:.3g} rad at t={time:.6g}; reduce dt")
        self.time = time
        self.jump = jump
