"""Exception hierarchy shared by every grpcover module."""


class GroupError(Exception):
    """Base class for all grpcover errors."""


class InputError(GroupError):
    """Malformed user input (CLI exit code 2)."""


class BudgetError(GroupError):
    """A configured computational budget was exceeded (CLI exit code 3)."""


class NotAGroup(InputError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BadIndex(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class NotASubgroup(InputError):
    pass


class NotNormal(InputError):
    pass


class BadParameter(InputError):
    pass


class DuplicateName(InputError):
    pass


class ParseError(InputError):
    """Syntax error in an expression or a catalog file.

    ``offset`` is a byte offset for expressions, ``line`` a 1-based line
    number for files; whichever does not apply is None.
    """

    def __init__(self, message, offset=None, line=None):
        where = ""
        if offset is not None:
            where = f" at offset {offset}"
        elif line is not None:
            where = f" at line {line}"
        super().__init__(message + where)
        self.offset = offset
        self.line = line


class OrderBudgetExceeded(BudgetError):
    pass


class LatticeBudgetExceeded(BudgetError):
    pass


class SolverBudgetExceeded(BudgetError):
    pass
