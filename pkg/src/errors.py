"""
Exception types raised by the certifier and the exit codes they map to.
"""

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3


class CertifierError(Exception):
    """Base class for every error raised by the certifier."""

    exit_code = EXIT_VERIFICATION_FAILED


class DomainError(CertifierError, ValueError):
    """An argument lies outside the domain of the requested operation."""

    exit_code = EXIT_USAGE


class PrecisionError(CertifierError):
    """The requested 2-adic precision could not be certified."""

    exit_code = EXIT_PRECISION

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class CacheFormatError(CertifierError):
    """A cache or golden-value file is malformed."""

    exit_code = EXIT_USAGE

    def __init__(self, path, line_no, reason):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


class ReassemblyError(CertifierError):
    """A partial fraction decomposition does not reproduce its input."""


class NonStabilizingError(CertifierError):
    """Direct Volkenborn sums did not show monotone agreement growth."""

    def __init__(self, message, table=None):
        super().__init__(message)
        self.table = table or []


class ConstructionError(CertifierError):
    """A constructed object violates a postcondition it must satisfy by construction."""
