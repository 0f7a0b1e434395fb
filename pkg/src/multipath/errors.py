class MultipathError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(MultipathError, ValueError):
    """Bad input: malformed files, invalid graphs, broken algebra axioms."""


class ParseError(ValidationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvariantError(MultipathError, RuntimeError):
    """An internal identity failed, e.g. d*d != 0.  Always a bug signal."""
