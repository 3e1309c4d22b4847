"""Exception types shared across the package."""


class FuncalError(Exception):
    """Base class for all errors raised by funcal."""


class ValidationError(FuncalError, ValueError):
    """Invalid input: shape mismatch, non-finite entries, bad parameters."""


class CsvParseError(FuncalError, ValueError):
    """A CSV cell could not be parsed; carries file, line and column."""

    def __init__(self, path, line, column, cell):
        self.path = str(path)
        self.line = line
        self.column = column
        super().__init__(
            f"{self.path}: line {line}, column {column}: "
            f"could not parse {cell!r} as a number"
        )


class SingularSystemError(FuncalError, RuntimeError):
    """A linear system was rank deficient or numerically singular.

    The estimated condition number (may be ``inf``) is stored on the
    ``condition`` attribute.
    """

    def __init__(self, message, condition=None):
        self.condition = condition
        if condition is not None:
            message = f"{message} (estimated condition number: {condition:.3e})"
        super().__init__(message)
