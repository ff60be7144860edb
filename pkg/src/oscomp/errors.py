"""Exception hierarchy for oscomp."""


class OscompError(Exception):
    """Base class for every error raised by the library."""


class ValueOutOfBound(OscompError):
    pass


class NegativeInput(OscompError):
    pass


class NotAMember(OscompError):
    pass


class WrongKind(OscompError):
    pass


class UnsupportedOrderMode(OscompError):
    pass


class ZeroNormalizer(OscompError):
    pass


class PreconditionViolated(OscompError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class BoundTooSmall(OscompError):
    pass


class IncompatibleModels(OscompError):
    pass


class UndecidableAtBound(OscompError):
    pass


class NotIncreasing(OscompError):
    pass


class NoFullElement(OscompError):
    pass


class OracleFailure(OscompError):
    pass


class NoFullPair(OscompError):
    pass


class ParseError(OscompError):
    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.message = message
        self.location = location
