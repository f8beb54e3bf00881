"""Exception hierarchy shared by every module of the package."""


class KineticError(Exception):
    """Base class for all errors raised by kinetic_geom."""


class DegreeOverflowError(KineticError):
    """A polynomial would exceed the configured maximum working degree."""


class EverywhereZeroError(KineticError):
    """Root isolation was asked for a polynomial that vanishes identically."""


class NumericalFailureError(KineticError):
    """Root refinement did not converge inside its iteration budget.

    ``interval`` is the bracket that failed; ``pair`` is filled in by the
    solvers with the object indices being processed, when known.
    """

    def __init__(self, message, interval=None, pair=None):
        super().__init__(message)
        self.interval = interval
        self.pair = pair


class PreconditionError(KineticError):
    """An operation's documented precondition does not hold."""


class ContractError(KineticError):
    """Incompatible operands (horizon or dimension mismatch, bad invariants)."""


class ConfigurationError(KineticError):
    """The scenario lacks data required by the requested query."""


class ApproximationInfeasibleError(KineticError):
    """A Taylor approximation would need more terms than allowed."""


class UnsupportedMetricError(KineticError):
    """The query is not defined for the scenario's metric."""
