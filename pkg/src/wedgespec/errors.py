"""Exception hierarchy for wedgespec.

Validation problems (bad inputs, refused configurations) and numerical
failures are kept in separate branches so the CLI can map them to
distinct exit codes.
"""


class WedgeSpecError(Exception):
    """Base class for all package errors."""


class ValidationError(WedgeSpecError):
    """Input rejected before any computation was attempted."""


class LimitCircleInput(ValidationError):
    """The contour sits on Stokes lines; the half-line shooting problem is
    under-determined without boundary conditions at infinity."""


class NumericalError(WedgeSpecError):
    """A computation started but could not be completed reliably."""


class BranchAmbiguous(NumericalError):
    """Re q^(1/2) is numerically zero at the seeding point, so the
    decaying branch cannot be selected."""


class StepLimitExceeded(NumericalError):
    """The adaptive integrator hit its step budget."""


class NonFiniteState(NumericalError):
    """Overflow or NaN in the integration state despite rescaling."""


class BoundaryZero(NumericalError):
    """|f| fell below the safe floor on a winding contour, or phase
    unwrapping exhausted its refinement budget."""


class NonConvergence(NumericalError):
    """An iterative refinement (Muller, inverse iteration) failed to
    converge within its iteration budget."""


class RootCountMismatch(NumericalError):
    """Argument-principle count disagrees with the refined root list."""


class QuadratureNonConvergence(NumericalError):
    """Adaptive quadrature reported a suspect error estimate."""
