"""Exception hierarchy shared by every mup module."""


class MupError(Exception):
    """Base class for all errors raised by this package."""


class MupSyntaxError(MupError):
    """Lexical or grammatical error in a program or query.

    Carries 1-based line/column of the offending token.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "%s (line %d, column %d)" % (message, line, column)
        super().__init__(message)


class LoadError(MupError):
    """Program cannot be loaded (e.g. it redefines a built-in predicate)."""


class UnknownPredicateError(MupError):
    """A goal calls a predicate with no clauses and no built-in entry."""


class EvalError(MupError):
    """Base class for arithmetic evaluation errors."""


class InstantiationError(EvalError):
    """An unbound variable reached a context that needs a concrete value."""


class ArithTypeError(EvalError):
    """A non-number (or a number of the wrong class) reached arithmetic."""


class TranslateError(MupError):
    """Source-to-source translation cannot proceed (e.g. name collision)."""


class InternalError(MupError):
    """Invariant violation inside the engine; indicates a bug, not user error."""
