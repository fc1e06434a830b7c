"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ScenarioError(ValueError):
    """A scenario file is malformed or fails validation.

    The offending field name is carried in ``field`` so front ends can
    report it precisely.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"scenario field '{field}': {message}")


class NumericError(RuntimeError):
    """A numerical routine failed to converge or produced non-finite values."""
