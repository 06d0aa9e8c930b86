"""Exception types shared across the package."""


class StateError(RuntimeError):
    """An operation was called on objects whose fitness is not assigned yet."""


class CapacityError(RuntimeError):
    """A brute-force instance is too large to enumerate."""


class CsvParseError(ValueError):
    """A population CSV could not be parsed.

    Carries the 1-based line number of the offending row.
    """

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number
