"""Shared exception types for the toolkit."""


class ToolkitError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(ToolkitError, ValueError):
    """An operation was called on input violating its stated contract.

    Subclasses ValueError so callers can catch it with either type.
    """


class BudgetExceededError(ToolkitError, RuntimeError):
    """A bounded-runtime computation ran past its allotted budget."""
