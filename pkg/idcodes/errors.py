class InputError(ValueError):
    """Out-of-range vertices, bad axes, malformed grids or unsupported parameters."""


class FormatError(InputError):
    """A code, Latin square, parity-check or edge-list file could not be parsed."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class PreconditionError(ValueError):
    """An operation was called outside the hypotheses it relies on."""


class BudgetExceededError(RuntimeError):
    """Work would exceed a configured budget; nothing partial is returned."""

    def __init__(self, message, spent=None, budget=None):
        super().__init__(message)
        self.spent = spent
        self.budget = budget


class InternalError(AssertionError):
    """Two independent computations disagreed. Always a bug."""
