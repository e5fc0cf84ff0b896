"""Built-in predicates: arithmetic comparison, is/2, read/1, write/1.

The engine consults ``BUILTINS`` before backchaining, so a (name, arity)
listed here can never be resolved against user clauses, and programs that
try to define one are rejected at load time.

All built-ins here are deterministic: they succeed at most once and leave
no choicepoint.  I/O side effects are not undone on backtracking.
"""

import sys
from dataclasses import dataclass, field

from mup import kernel
from mup.errors import ArithTypeError, EvalError, InstantiationError
from mup.terms import Compound, Const, Num, Var

END_OF_FILE = "end_of_file"


class IoPorts:
    """Pluggable term input / text output pair owned by one engine.

    ``read_line`` returns the next input line (one term, ``.``-terminated)
    or None at end of input; ``write`` appends text to the output sink.
    """

    def __init__(self, read_line=None, write=None):
        self.read_line = read_line if read_line is not None else _stdin_line
        self.write = write if write is not None else sys.stdout.write
        self.out_buffer = None

    @classmethod
    def scripted(cls, lines):
        """Queue of input lines plus a captured output buffer (for tests)."""
        import io as _io

        buffer = _io.StringIO()
        iterator = iter(list(lines))

        def read_line():
            return next(iterator, None)

        ports = cls(read_line, buffer.write)
        ports.out_buffer = buffer
        return ports

    def captured(self):
        return self.out_buffer.getvalue() if self.out_buffer is not None else ""


def _stdin_line():
    line = sys.stdin.readline()
    return line if line else None


class BuiltinContext:
    """What a built-in may touch: the binding store and the I/O ports."""

    __slots__ = ("bindings", "io", "occurs_check")

    def __init__(self, bindings, io, occurs_check=False):
        self.bindings = bindings
        self.io = io
        self.occurs_check = occurs_check

    def unify(self, t, s):
        b = self.bindings
        return kernel.unify(t, s, b.map, b.trail, self.occurs_check)


# ---------------------------------------------------------------------------
# Arithmetic

_INT_ONLY = ("//", "mod")


def eval_arith(term, bindings):
    """Evaluate an arithmetic expression to a Python number.

    Supports + - * / on ints and floats (/ always yields a float),
    // and mod on ints only, and unary minus.
    """
    t = bindings.deref(term)
    tt = type(t)
    if tt is Num:
        return t.value
    if tt is Var:
        raise InstantiationError(
            "arguments of arithmetic are not sufficiently instantiated"
        )
    if tt is Compound:
        op = t.functor
        if len(t.args) == 1 and op == "-":
            return -eval_arith(t.args[0], bindings)
        if len(t.args) == 2 and op in ("+", "-", "*", "/", "//", "mod"):
            a = eval_arith(t.args[0], bindings)
            b = eval_arith(t.args[1], bindings)
            if op in _INT_ONLY and not (
                type(a) is int and type(b) is int
            ):
                raise ArithTypeError("%s needs integer operands" % op)
            try:
                if op == "+":
                    return a + b
                if op == "-":
                    return a - b
                if op == "*":
                    return a * b
                if op == "/":
                    return a / b
                if op == "//":
                    return a // b
                return a % b
            except ZeroDivisionError:
                raise EvalError("division by zero") from None
    raise ArithTypeError("not an arithmetic expression: %r" % (t,))


def _cmp(op):
    def run(ctx, args):
        a = eval_arith(args[0], ctx.bindings)
        b = eval_arith(args[1], ctx.bindings)
        if op == "<":
            return a < b
        if op == ">":
            return a > b
        if op == ">=":
            return a >= b
        return a <= b

    return run


def _is(ctx, args):
    value = eval_arith(args[1], ctx.bindings)
    return ctx.unify(args[0], Num(value))


def _unify_builtin(ctx, args):
    return ctx.unify(args[0], args[1])


def _true(ctx, args):
    return True


def _fail(ctx, args):
    return False


def _read(ctx, args):
    from mup.syntax import parse_term

    line = ctx.io.read_line()
    if line is None:
        return ctx.unify(args[0], Const(END_OF_FILE))
    term = parse_term(line)
    return ctx.unify(args[0], term)


def _write(ctx, args):
    from mup.syntax import pretty

    term = ctx.bindings.resolve(args[0])
    ctx.io.write(pretty(term, quoted=False))
    return True


def _nl(ctx, args):
    ctx.io.write("\n")
    return True


@dataclass(frozen=True)
class Builtin:
    name: str
    arity: int
    fn: object = field(repr=False)
    deterministic: bool = True
    performs_io: bool = False
    may_error: bool = False


def _table(*entries):
    return {(b.name, b.arity): b for b in entries}


BUILTINS = _table(
    Builtin("true", 0, _true),
    Builtin("fail", 0, _fail),
    Builtin("false", 0, _fail),
    Builtin("=", 2, _unify_builtin),
    Builtin("<", 2, _cmp("<"), may_error=True),
    Builtin(">", 2, _cmp(">"), may_error=True),
    Builtin(">=", 2, _cmp(">="), may_error=True),
    Builtin("=<", 2, _cmp("=<"), may_error=True),
    Builtin("is", 2, _is, may_error=True),
    Builtin("read", 1, _read, performs_io=True, may_error=True),
    Builtin("write", 1, _write, performs_io=True),
    Builtin("nl", 0, _nl, performs_io=True),
)
