"""Exception hierarchy shared by all trunclab modules."""


class TruncLabError(Exception):
    """Base class for all trunclab errors."""


class StructureError(TruncLabError):
    """A carrier, table, order or invariant is malformed."""


class SpaceMismatchError(TruncLabError):
    """Operands live over different spaces or frames."""


class PositivityError(TruncLabError):
    """An operation required a nonnegative operand."""


class UnsupportedOperationError(TruncLabError):
    """Operation tag not supported by the model (e.g. multiplication)."""


class BudgetError(TruncLabError):
    """A search or sample budget was exhausted or is invalid."""


class ParseError(TruncLabError):
    """Instance file error, carrying the offending line number."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
        self.message = message
