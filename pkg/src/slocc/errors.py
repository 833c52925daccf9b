"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class ConsistencyError(ArithmeticError):
    """A numerical self-check failed (e.g. negative squared norm)."""


class ZeroProbabilityError(ArithmeticError):
    """A conditioning event has probability zero."""


class UndefinedEntanglementError(ZeroProbabilityError):
    """No particle pair is found across the two measurement regions.

    The conditioned reduced state does not exist, so the operational
    entanglement is undefined. This is deliberately not reported as 0.
    """


class ProjectionFailedError(ZeroProbabilityError):
    """Projection onto the one-particle-per-region subspace has zero weight."""
