"""Exception hierarchy shared by the whole package."""


class GlatError(Exception):
    """Base class for every error raised by glat."""


class InputError(GlatError):
    """Bad user-supplied data; the CLI maps these to exit status 2."""


class InvalidParameter(InputError, ValueError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class SubNotContained(GlatError, ValueError):
    """A generator lies outside the ambient lattice."""


class NotFinite(InputError):
    """Group enumeration exceeded the element cap."""


class NotUnimodular(InputError):
    pass


class NotCommuting(InputError):
    pass


class NotAbelian(GlatError):
    pass


class NotNormal(GlatError):
    pass


class NotCyclic(GlatError):
    pass


class GroupMismatch(InputError):
    pass


class InvariantViolation(GlatError, AssertionError):
    """An internal self-check failed; results must not be trusted."""
