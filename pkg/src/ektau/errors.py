"""Exception hierarchy shared by all ektau modules."""


class EktauError(Exception):
    """Base class for all ektau errors."""


class ModelDomainError(EktauError):
    """A point lies outside the coordinate model of the space."""


class ConvergenceError(EktauError):
    """A numerical routine failed to converge.

    Carries the best bound found so far in ``best``, when one exists.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class UnsupportedSpaceError(EktauError):
    """The requested operation is not implemented for this (kappa, tau)."""


class HypothesisViolationError(EktauError):
    """Input data violates a mathematical hypothesis of the operation."""
