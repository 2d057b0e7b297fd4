"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Raised when operand shapes violate an operation's dimension contract."""


class NumericError(ArithmeticError):
    """Raised on non-finite inputs or failed numerical post-conditions."""


class FormatError(ValueError):
    """Malformed serialized data (container or image file).

    ``offset`` is the byte position at which the problem was detected, when
    known.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset
