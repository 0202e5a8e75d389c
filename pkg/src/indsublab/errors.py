"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called outside its documented preconditions."""


class InvariantError(RuntimeError):
    """An internal consistency assertion failed; indicates a bug."""
