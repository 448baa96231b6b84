"""Exception types shared across modules."""
from .graph import GraphInputError

__all__ = ["GraphInputError", "ContractError", "NoInstance", "InternalError"]


class ContractError(ValueError):
    """A precondition of the called operation does not hold.

    ``certificate`` carries the witness when there is one (e.g. an
    obstruction showing that a graph is not PHCA).
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class NoInstance(Exception):
    """The instance was proved to have no solution within the budget."""

    def __init__(self, reason: str, trace=None):
        super().__init__(reason)
        self.reason = reason
        self.trace = trace or []


class InternalError(AssertionError):
    """A proven bound or invariant failed; indicates a bug."""
