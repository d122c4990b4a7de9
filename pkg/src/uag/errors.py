"""Exception hierarchy shared by every module.

The CLI maps ``InputError`` to exit code 3 and ``ResourceLimit`` to exit code 4.
"""


class UAGError(Exception):
    pass


class InputError(UAGError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})" if column is not None else f" (line {line})"
        super().__init__(message + where)


class DuplicateSymbol(ParseError):
    pass


class UnknownSymbol(ParseError):
    pass


class ArityMismatch(ParseError):
    pass


class LanguageMismatch(InputError):
    pass


class MissingBinding(InputError):
    pass


class EmptySeedNoConstants(InputError):
    pass


class EmptySet(InputError):
    pass


class Unbounded(InputError):
    def __init__(self, variable):
        self.variable = variable
        super().__init__(f"no finite bound derivable for variable {variable!r}")


class ResourceLimit(UAGError):
    """A configured enumeration cap or search budget was exceeded."""
