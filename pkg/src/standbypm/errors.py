"""Exception hierarchy shared by every module."""


class StandbyPMError(Exception):
    """Base class for all library errors."""


class DomainError(StandbyPMError, ValueError):
    """An argument lies outside the domain of the operation (e.g. negative time)."""


class BeyondSupportError(DomainError):
    """The survival function is numerically zero where a conditional quantity was requested."""


class PreconditionError(StandbyPMError, ValueError):
    """The model or hazard shape does not satisfy the requirements of a solver."""


class NumericalError(StandbyPMError, ArithmeticError):
    """Quadrature or root finding failed to reach the requested accuracy."""


class NonFiniteMeanError(NumericalError):
    """The survival integral does not converge."""


class NoCrossingError(NumericalError):
    """A bracketing search found no sign change inside the search horizon."""
