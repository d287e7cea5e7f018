"""Exception types shared across the package and mapped to CLI exit codes."""


class DataError(ValueError):
    """Malformed or inconsistent input data (CLI exit code 2)."""


class BudgetError(RuntimeError):
    """A stochastic search or generation budget was exhausted (CLI exit code 3)."""


class FeasibilityError(ValueError):
    """Requested parameters cannot produce a valid artifact (CLI exit code 3)."""
