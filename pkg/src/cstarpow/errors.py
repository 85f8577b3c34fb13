"""Exception types shared across the package."""


class BudgetError(RuntimeError):
    """A requested computation would exceed the configured size budget."""


class DegenerateDrawError(RuntimeError):
    """A randomized spectral computation failed after the allowed retries."""
