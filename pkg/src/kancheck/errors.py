"""Exception types shared across the package."""


class RejectedInput(ValueError):
    """Input outside an operation's contract (bad dimensions, sizes, laws)."""


class TruncationError(RejectedInput):
    """An operation would leave the dimension bound of a truncated set."""


class CompositionError(RejectedInput):
    """Ordinal maps or operators whose sizes do not compose."""


class InternalInvariantError(RuntimeError):
    """A law the library guarantees by construction failed: an implementation bug."""
