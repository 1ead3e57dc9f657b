class PolyfunError(Exception):
    """Base class for all library errors."""


class RingSpecError(PolyfunError):
    """A ring-spec document or ring construction is invalid."""


class CapError(PolyfunError):
    """A configured size, degree, period or modulus cap was exceeded."""


class VerificationError(PolyfunError):
    """An internal re-verification failed. Indicates a bug, never a result."""


class TheoremViolation(VerificationError):
    """A checked theorem's conclusion failed while its hypothesis held."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
