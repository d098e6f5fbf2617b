"""Exception hierarchy shared by every module."""


class FuntervalError(Exception):
    """Base class for all library errors."""


class DomainError(FuntervalError, ValueError):
    """An operation was applied outside its mathematical domain."""


class EnclosureError(FuntervalError, ArithmeticError):
    """An inclusion function could not produce a finite enclosure.

    Raised when a denominator's enclosure contains zero.
    """


class DegenerateError(FuntervalError, ValueError):
    """A zero-width interval or box was given where positive width is required."""


class ContractError(FuntervalError, RuntimeError):
    """A contraction procedure was called with its precondition violated."""


class ParseError(FuntervalError, ValueError):
    """Malformed expression text.

    Attributes
    ----------
    position : int
        Zero-based character offset of the offending token.
    """

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")

    def diagnostic(self) -> str:
        """Return the message with a caret line pointing at the error."""
        if not self.text:
            return str(self)
        return f"{self}\n  {self.text}\n  {' ' * self.position}^"
