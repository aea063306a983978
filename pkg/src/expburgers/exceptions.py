"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when user-supplied parameters or inputs fail validation."""


class SingularSystemError(ArithmeticError):
    """Raised when elimination meets a pivot too small to divide by safely."""


class ConfigError(ValidationError):
    """Raised on malformed configuration text.

    Carries the one-based line number of the offending entry when known, so
    command-line diagnostics can point at the exact line.
    """

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no
