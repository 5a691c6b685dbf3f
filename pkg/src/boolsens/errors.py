"""Exception types shared across the package."""


class CapExceededError(ValueError):
    """An exact algorithm was asked to run above its configured size limit."""

    def __init__(self, cap: str, value: int, limit: int):
        self.cap = cap
        self.value = value
        self.limit = limit
        super().__init__(f"{cap}: {value} exceeds the configured limit {limit}")


class ExpressionSyntaxError(ValueError):
    """Malformed Boolean expression; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class ConvergenceError(RuntimeError):
    """An iterative eigensolver ran out of its iteration budget."""
