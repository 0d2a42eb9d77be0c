"""Exception hierarchy shared by every module of the package."""


class SCAError(Exception):
    """Base class for all errors raised by periodic_sca."""


class InternalInvariantViolation(SCAError):
    """A mathematically impossible state was reached; indicates a bug."""


class CapacityExceeded(SCAError):
    pass


class BudgetExceeded(SCAError):
    pass


class NoCarrier(SCAError):
    """No carrier is a fixed point of transport along the path."""


class NonUniqueEvolution(SCAError):
    """Several fixed-point carriers disagree on the evolved path or energies."""

    def __init__(self, message, carriers=()):
        super().__init__(message)
        self.carriers = tuple(carriers)


class NegativeMultiplicity(SCAError):
    pass


class NotInB1(SCAError):
    """Letter 1 is not weakly the most frequent letter of the path."""


class NotHighest(SCAError):
    pass


class InvalidRiggedConfiguration(SCAError):
    pass


class NoHighestPathInOrbit(SCAError):
    pass


class RoutesDisagree(SCAError):
    """Two independent computations of the same object gave different answers."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class ZeroVelocity(SCAError):
    pass


class SingularMatrix(SCAError):
    pass


class SingularA(SingularMatrix):
    pass


class NotPositiveDefinite(SCAError):
    pass


class NonBinaryDigit(SCAError):
    pass


class NegativeOccupancy(SCAError):
    pass


class CollisionDetected(SCAError):
    """Two string centers of one block coincide modulo 1."""
