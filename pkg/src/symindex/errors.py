"""Exception taxonomy shared across the package.

The CLI maps these onto process exit codes, so the split matters:
input problems (bad JSON, inconsistent model data) must stay distinct
from numerical failures (lost phase tracking, degenerate crossings)
and from verification failures (a certificate that does not check out).
"""


class SymindexError(Exception):
    """Base class for all package errors."""


class InputError(SymindexError):
    """Malformed or inconsistent input data. CLI exit code 1."""


class SearchExhaustedError(SymindexError):
    """A bounded search finished without producing any result. CLI exit code 2."""


class VerificationError(SymindexError):
    """An exact consistency check failed. CLI exit code 3."""


class NumericalError(SymindexError):
    """A floating-point computation could not be completed reliably. CLI exit code 4."""


class DegeneracyError(NumericalError):
    """An operation that requires non-degeneracy met a unit eigenvalue."""


class UnwrapError(NumericalError):
    """Phase tracking lost: consecutive samples rotate by a quarter turn or more."""


class ClassificationError(NumericalError):
    """Eigenvalue classification hit a boundary case it cannot resolve."""


class NearResonanceError(NumericalError):
    """An iterate lands inside the guard band around a rotation-number resonance."""


class CertificateRangeError(InputError):
    """A certificate iterate is too small for the requested backward checks."""
