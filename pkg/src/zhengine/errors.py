"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed FEN, SAN, UCI or book text.

    ``offset`` is the character offset (FEN, move text) or the 1-based line
    number (opening books, PGN) where parsing failed, when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at {offset})"
        super().__init__(message)
        self.offset = offset


class AmbiguousMove(ParseError):
    pass


class IllegalMove(ValueError):
    pass


class NoLegalMoves(ValueError):
    pass


class UnencodableMove(ValueError):
    pass


class IllegalIndex(ValueError):
    pass


class FormatError(ValueError):
    """Bad magic, version, truncation or trailing data in a binary file."""


class ShapeMismatch(ValueError):
    pass


class DomainError(ValueError):
    pass
