"""Exception types shared across the package."""


class PdekitError(Exception):
    """Base class for all package errors."""


class ParameterError(PdekitError, ValueError):
    """An argument is outside the domain an operation is defined on."""


class PrecisionExhausted(PdekitError):
    """Requested order is so high that coefficients underflow to zero."""


class BudgetExceeded(PdekitError):
    """A dense materialization would exceed the configured size budget."""


class SymmetryViolation(PdekitError):
    """A vector has a component in the wrong symmetry sector."""


class CompatibilityError(PdekitError):
    """Right-hand side is incompatible with the operator kernel."""


class DegenerateRhs(PdekitError):
    """Source and boundary terms cancel exactly; no state to prepare."""


class ConvergenceFailure(PdekitError):
    """An iterative solve stopped before reaching its tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SpecError(PdekitError):
    """A problem specification failed validation."""
