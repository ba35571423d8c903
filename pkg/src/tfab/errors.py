"""Exception hierarchy shared by all modules."""


class TfabError(Exception):
    """Base class for every error raised by the library."""


class ShiftBelowZero(TfabError):
    pass


class ShiftAtInfinity(TfabError):
    pass


class ZeroElement(TfabError):
    """Height and type queries are undefined on the zero element."""


class MembershipViolation(TfabError):
    pass


class NotAPairRelation(TfabError):
    pass


class PreconditionViolated(TfabError):
    pass


class MixedPrecision(TfabError):
    pass


class MixedPrime(TfabError):
    pass


class InvalidLadder(TfabError):
    pass


class InsufficientPrecision(TfabError):
    pass


class IndeterminateAtPrecision(TfabError):
    """A decision would depend on p-adic digits beyond the stored precision."""


class InvalidTwoType(TfabError):
    pass


class ParseError(TfabError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class SemanticError(ParseError):
    pass
