from typing import Optional


class GinBettiException(Exception):
    pass


class InputError(GinBettiException):
    pass


class ParseError(InputError):
    def __init__(
        self,
        message: str,
        position: Optional[int] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        self.position = position
        self.line = line
        self.column = column
        self.detail = message
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        elif position is not None:
            message = f"position {position}: {message}"
        super().__init__(message)


class UnknownVariableError(ParseError):
    pass


class ZeroDenominatorError(ParseError):
    pass


class IdealFileError(ParseError):
    pass


class InvalidFieldError(InputError):
    pass


class InvalidRingError(InputError):
    pass


class NotHomogeneousError(ParseError):
    pass


class MissingSeedError(InputError):
    pass


class PreconditionError(InputError):
    pass


class NotInvertibleError(GinBettiException):
    pass


class NotStableError(GinBettiException):
    pass


class NotAnOSequenceError(GinBettiException):
    pass


class WindowTooShortError(GinBettiException):
    pass


class WindowTooSmallError(GinBettiException):
    pass


class InterpolationError(GinBettiException):
    pass


class GenericityError(GinBettiException):
    pass


class ResourceGuardError(GinBettiException):
    pass


class DegreeGuardError(ResourceGuardError):
    pass


class ExponentOverflowError(ResourceGuardError):
    pass
