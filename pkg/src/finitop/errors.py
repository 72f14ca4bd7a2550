"""Exception hierarchy shared by every module."""


class FinitopError(Exception):
    """Base class for all errors raised by finitop."""


class InvalidInput(FinitopError, ValueError):
    """An argument violates a documented precondition."""


class CapacityError(FinitopError):
    """A computation would exceed the configured size guard."""


class ParseError(FinitopError):
    """Malformed input text. Carries a 1-based line and column."""

    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(str(self))

    def __str__(self):
        where = ""
        if self.source:
            where += f"{self.source}:"
        if self.line is not None:
            where += f"{self.line}:"
            if self.column is not None:
                where += f"{self.column}:"
        return f"{where} {self.message}" if where else self.message


class UnknownReference(ParseError):
    """A name used in the input does not resolve to a declared object."""
