"""Exception types shared across the package."""


class NcthetaError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(NcthetaError, ValueError):
    """Shape or index outside the declared dimensions."""


class NotHermitianError(NcthetaError, ValueError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotPsdError(NcthetaError, ValueError):
    """A matrix required to be positive semidefinite has a negative eigenvalue beyond tolerance."""


class PreconditionError(NcthetaError, ValueError):
    """An operation's mathematical precondition failed (carries the measured violation)."""

    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class GraphInvariantError(NcthetaError, ValueError):
    """A non-commutative graph invariant (identity, adjoints, bimodule) failed."""


class UnsupportedSizeError(NcthetaError, ValueError):
    """Instance size outside the supported range for an exact enumeration."""


class ParseError(NcthetaError, ValueError):
    """Malformed input file; message carries the offending field or line."""


class SolverFailure(NcthetaError, RuntimeError):
    """The SDP solver did not return an optimal solution; carries diagnostics."""

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution
