"""Exception hierarchy shared by all modules."""


class ConeCollapseError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ConeCollapseError, ValueError):
    """An argument lies outside the domain of the operation."""


class NonConvergence(ConeCollapseError, ArithmeticError):
    """A series or continued fraction did not reach its tolerance."""


class SpecfunOverflow(ConeCollapseError, OverflowError):
    """A special-function value is not representable in double precision."""


class BracketFailure(ConeCollapseError, ArithmeticError):
    """No sign change was found while bracketing a root."""


class InsufficientResolution(ConeCollapseError, ValueError):
    """A scan did not resolve enough oscillation extrema."""


class StepFailure(ConeCollapseError, ArithmeticError):
    """The trajectory integrator failed to advance or localize an event."""


class Inconsistent(ConeCollapseError, AssertionError):
    """Observed trajectory behaviour contradicts its analytic regime."""
