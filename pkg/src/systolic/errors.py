"""Exception types shared across the package."""


class ResourceBudgetError(RuntimeError):
    """An enumeration would exceed its configured resource budget."""

    def __init__(self, message: str, attempted: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.attempted = attempted
        self.budget = budget


class ExactRegionError(ValueError):
    """A link was requested for a vertex outside the ball's exact region."""


class DefiningGraphError(ValueError):
    """A defining-graph document failed validation.

    `location` points at the offending part of the document, e.g. "edges[2]".
    """

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
