"""Exception hierarchy shared by every module."""


class PruneError(Exception):
    """Base class for all library errors."""


class InputError(PruneError, ValueError):
    """Malformed or invalid input data (files, instances, points)."""


class ContractError(PruneError, ValueError):
    """An operation was called outside its defined domain."""


class SolverIncomplete(PruneError, RuntimeError):
    """A search ran out of its node or time budget before proving optimality."""

    def __init__(self, message, nodes=None):
        super().__init__(message)
        self.nodes = nodes


class NotApplicable(PruneError):
    """An axiom case does not meet the axiom's preconditions."""
