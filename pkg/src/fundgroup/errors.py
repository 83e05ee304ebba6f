"""Exception hierarchy.

Input problems derive from :class:`InputError` and map to CLI exit code 2.
"""


class FundGroupError(Exception):
    """Base class for every error raised by this package."""


class InputError(FundGroupError, ValueError):
    """Bad user input; ``position`` locates it in ``text`` when known."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.message = message
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)

    def shifted(self, offset: int, text: str | None = None) -> "InputError":
        """The same error located in an enclosing string."""
        pos = None if self.position is None else self.position + offset
        return type(self)(self.message, pos, text if text is not None else self.text)


class InvalidRadicand(InputError):
    pass


class MixedField(InputError):
    pass


class DivByZero(InputError, ZeroDivisionError):
    pass


class ParseError(InputError):
    pass


class NotIrrational(InputError):
    pass


class InvalidDiscriminant(InputError):
    pass


class NotADiscriminant(InvalidDiscriminant):
    pass


class NotPositive(InputError):
    pass


class InvalidDescriptor(InputError):
    pass


class InvalidRank(InputError):
    pass


class AlgebraMismatch(InputError):
    pass


class NotABimodule(InputError):
    pass


class NotApplicable(InputError):
    pass


class NoTraceGroupRule(FundGroupError):
    pass


class UnsupportedComposition(FundGroupError):
    pass


class InvariantViolation(FundGroupError, AssertionError):
    """An internal cross-check disagreed. Should never fire."""


class NotAProjection(InputError):
    pass
