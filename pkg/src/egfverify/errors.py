"""Exception hierarchy shared by every layer of the package."""


class EgfError(Exception):
    """Base class for all package errors."""


class SubstituteZeroIntoLaurent(EgfError, ZeroDivisionError):
    """Zero substituted for U where a negative power of U is present."""


class OrderMismatch(EgfError, ValueError):
    pass


class NonUnitConstantTerm(EgfError, ValueError):
    pass


class NonUnitLeadingTerm(EgfError, ValueError):
    pass


class ValuationError(EgfError, ValueError):
    pass


class NonzeroConstantTerm(EgfError, ValueError):
    pass


class IndexBeyondTruncation(EgfError, IndexError):
    pass


class InvalidSpec(EgfError, ValueError):
    pass


class UnknownFamily(EgfError, KeyError):
    def __str__(self):
        return f"unknown family {self.args[0]!r}"


class UnknownCase(EgfError, KeyError):
    def __str__(self):
        return f"unknown identity case {self.args[0]!r}"
