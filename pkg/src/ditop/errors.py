"""Shared exception types."""


class ModelError(ValueError):
    """Structurally invalid complex, path, map or input file."""


class PathCapExceeded(RuntimeError):
    """Dipath enumeration for a pair exceeded the configured cap.

    Carries the offending endpoint pair so callers can report it.
    """

    def __init__(self, pair, cap):
        super().__init__(f"more than {cap} dipaths for pair {pair}")
        self.pair = pair
        self.cap = cap


class BudgetExceeded(RuntimeError):
    """A search budget (partition cap, bijection cap, ...) was exhausted."""
