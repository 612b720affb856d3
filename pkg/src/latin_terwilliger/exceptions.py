"""Exception hierarchy. Every input problem is a ``LatinSquareError``."""


class LatinSquareError(ValueError):
    """Base class for invalid input or violated preconditions."""


class ParseError(LatinSquareError):
    pass


class RaggedGrid(ParseError):
    pass


class SymbolOutOfRange(LatinSquareError):
    pass


class RowRepeat(ParseError):
    pass


class ColumnRepeat(ParseError):
    pass


class PointNotInArray(LatinSquareError):
    pass


class NotALoop(LatinSquareError):
    pass


class NotRightBol(LatinSquareError):
    pass


class NotMoufang(LatinSquareError):
    pass


class NoRIP(LatinSquareError):
    pass


class OrderTooSmall(LatinSquareError):
    pass


class SizeMismatch(LatinSquareError):
    pass


class NotClosed(LatinSquareError):
    pass


class UnknownCorpusName(LatinSquareError, KeyError):
    pass


class InternalConsistencyError(AssertionError):
    """A mathematical invariant failed. Signals a bug or corrupted data, never bad input."""


class TwoComponentAgreement(InternalConsistencyError):
    pass


class NotWellDefined(InternalConsistencyError):
    pass
