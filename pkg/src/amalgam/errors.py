"""Exception hierarchy shared by every module of the package."""


class AmalgamError(Exception):
    """Base class for all errors raised by this package."""


class InputError(AmalgamError, ValueError):
    """Bad user input: wrong sizes, improper ideals, mismatched rings."""


class ValidationError(InputError):
    """A supplied map or structure fails its defining axioms.

    ``witness`` holds the offending data (e.g. an element pair).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(InputError):
    """An operation was called outside its documented precondition."""


class ResourceCapError(AmalgamError):
    """An enumeration would exceed a configured size cap."""


class InvariantError(AmalgamError, AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class InconsistencyError(AmalgamError):
    """The symbolic knowledge base derived an attribute both ways."""

    def __init__(self, message, chains=()):
        super().__init__(message)
        self.chains = tuple(chains)


class QueryError(AmalgamError, KeyError):
    """A symbolic query referenced an unknown entity or attribute."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""
