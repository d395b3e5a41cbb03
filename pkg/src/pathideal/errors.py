class GraphError(ValueError):
    """Malformed or unsupported graph input."""


class BudgetError(RuntimeError):
    """A computation was refused because it exceeds the configured budget."""
