"""mup: Horn-clause logic programming with committed-choice disjunction.

A goal ``G0 # G1`` runs the first disjunct that can succeed and discards
the other, giving mutual exclusion without Prolog's cut.  The package
bundles the interpreter (parser, unifier, solver, REPL), a transpiler to
cut-based Prolog, and a brute-force oracle used for differential testing
of the semantics.
"""

from mup.builtins import IoPorts, eval_arith
from mup.engine import (
    Engine,
    QueryResult,
    SolveConfig,
    TraceEvent,
    backchain,
    run_query,
    solve,
    solve_choice,
)
from mup.errors import (
    ArithTypeError,
    EvalError,
    InstantiationError,
    InternalError,
    LoadError,
    MupError,
    MupSyntaxError,
    TranslateError,
    UnknownPredicateError,
)
from mup.kernel import IMPL as kernel_impl
from mup.oracle import count_solutions_bruteforce, provable, selftest
from mup.syntax import (
    Clause,
    Program,
    parse_program,
    parse_query,
    parse_term,
    pretty,
    pretty_clause,
    pretty_goal,
)
from mup.terms import Bindings, Compound, Const, Num, Solution, Var
from mup.transpile import translate
from mup.unify import unify

__version__ = "0.1.0"

__all__ = [
    "ArithTypeError",
    "Bindings",
    "Clause",
    "Compound",
    "Const",
    "Engine",
    "EvalError",
    "InstantiationError",
    "InternalError",
    "IoPorts",
    "LoadError",
    "MupError",
    "MupSyntaxError",
    "Num",
    "Program",
    "QueryResult",
    "Solution",
    "SolveConfig",
    "TraceEvent",
    "TranslateError",
    "UnknownPredicateError",
    "Var",
    "backchain",
    "count_solutions_bruteforce",
    "eval_arith",
    "kernel_impl",
    "parse_program",
    "parse_query",
    "parse_term",
    "pretty",
    "pretty_clause",
    "pretty_goal",
    "provable",
    "run_query",
    "selftest",
    "solve",
    "solve_choice",
    "translate",
    "unify",
]
