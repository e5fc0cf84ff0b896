"""The solver: goal reduction plus backchaining over program clauses.

Execution alternates between two phases.  Reducing a goal dispatches on
its top connective (conjunction splits, equality unifies, committed
choice picks a disjunct, ...); an atomic goal switches to backchaining,
which tries the program's candidate clauses in source order, renaming
each apart, unifying its head and then reducing its body one level
deeper.

The search itself is iterative: an explicit continuation (a linked list
of frames) plus a stack of choicepoints, so derivation depth never eats
the host call stack.  Committed choice works by planting a commit frame
after the chosen disjunct; when control passes it, the choicepoint for
the other disjunct is dropped (and, in ``first`` mode, the chosen
disjunct's own choicepoints as well, which mirrors the cut-based
encoding).

Solutions come out of a lazy stream: no search happens between pulls.
"""

import itertools
from dataclasses import dataclass, field

from mup.builtins import BUILTINS, BuiltinContext, IoPorts
from mup.errors import MupError, UnknownPredicateError
from mup.kernel import unify as _kunify
from mup.syntax import (
    Call,
    Choice,
    ClassicalOr,
    Conj,
    Cut,
    Eq,
    Exists,
    SoftIfThenElse,
    TrueGoal,
    fresh_rename,
    free_goal_vars,
    parse_query,
    pretty,
    pretty_goal,
    subst_goal,
)
from mup.terms import Bindings, Compound, Num, Solution, Var, fresh_var

EXHAUSTED = "exhausted"
LIMITED = "limited"
ERRORED = "errored"

_COMMIT_MODES = ("soft", "first")
_UNKNOWN_MODES = ("error", "fail")


@dataclass(frozen=True)
class SolveConfig:
    """Knobs for one solving run.

    commit_mode 'soft' keeps the chosen disjunct's own alternatives;
    'first' also commits to its first solution (the cut translation's
    behaviour).
    """

    commit_mode: str = "soft"
    occurs_check: bool = False
    depth_limit: int | None = None
    max_solutions: int | None = None
    unknown_predicate: str = "error"

    def __post_init__(self):
        if self.commit_mode not in _COMMIT_MODES:
            raise ValueError("commit_mode must be one of %r" % (_COMMIT_MODES,))
        if self.unknown_predicate not in _UNKNOWN_MODES:
            raise ValueError(
                "unknown_predicate must be one of %r" % (_UNKNOWN_MODES,)
            )
        if self.depth_limit is not None and self.depth_limit < 1:
            raise ValueError("depth_limit must be >= 1")
        if self.max_solutions is not None and self.max_solutions < 1:
            raise ValueError("max_solutions must be >= 1")


@dataclass(frozen=True)
class TraceEvent:
    kind: str
    depth: int
    payload: str

    def line(self):
        return "%d %s %s" % (self.depth, self.kind, self.payload)


@dataclass
class QueryResult:
    solutions: list
    outcome: str
    error: MupError | None = field(default=None)


# Continuation frames (linked list of tuples):
#   ("goal", goal, depth, cut_barrier)
#   ("commit", serial, cp_index, first_mode, trace_info)
#   ("exit", depth, payload)           -- tracing only
#   ("fail",)                          -- force immediate backtracking
_FAIL_CONT = (("fail",), None)


class _ClauseCP:
    """Remaining candidate clauses for one atomic goal."""

    __slots__ = ("goal", "clauses", "idx", "cont", "depth", "barrier", "mark")

    def __init__(self, goal, clauses, cont, depth, barrier, mark):
        self.goal = goal
        self.clauses = clauses
        self.idx = 0
        self.cont = cont
        self.depth = depth
        self.barrier = barrier
        self.mark = mark


class _AltCP:
    """The unattempted branch of a choice / disjunction / if-then-else."""

    __slots__ = (
        "right", "cont", "depth", "barrier", "mark", "serial",
        "is_choice", "disabled", "hits_at_push", "info",
    )

    def __init__(self, right, cont, depth, barrier, mark, serial,
                 is_choice, hits_at_push, info):
        self.right = right
        self.cont = cont
        self.depth = depth
        self.barrier = barrier
        self.mark = mark
        self.serial = serial
        self.is_choice = is_choice
        self.disabled = False
        self.hits_at_push = hits_at_push
        self.info = info


class Engine:
    """One logical thread of search over an immutable, loaded program."""

    def __init__(self, program, cfg=None, io=None, trace=None):
        self.program = program
        self.cfg = cfg if cfg is not None else SolveConfig()
        self.io = io if io is not None else IoPorts()
        self.trace = trace
        self._serial = itertools.count()

    # -- public streams ----------------------------------------------------

    def solve(self, goal, answer_vars=None):
        """Lazily yield every Solution of ``goal``, in derivation order."""
        if answer_vars is None:
            answer_vars = [v for v in free_goal_vars(goal) if v.name != "_"]
        bindings = Bindings()
        hits = [0]
        for _ in self._run((("goal", goal, 0, 0), None), bindings, [], hits):
            yield Solution.from_bindings(answer_vars, bindings)

    def backchain(self, atom, bindings, clauses=None, hits=None):
        """Prove the atomic goal ``atom`` against ``clauses``.

        Yields once per successful derivation with ``bindings`` extended;
        exhausting the stream restores ``bindings``.  ``clauses`` defaults
        to the program's candidates for the atom; a single Clause is also
        accepted.  (Abandoning the stream early leaves the bindings of the
        last success in place.)
        """
        goal = bindings.deref(atom)
        if type(goal) is Var or type(goal) is Num:
            raise MupError("atomic goal expected, got %s" % pretty(goal))
        if clauses is None:
            key = _indicator(goal)
            clauses = self.program.clauses_for(*key) or []
        elif not isinstance(clauses, (list, tuple)):
            clauses = [clauses]
        if hits is None:
            hits = [0]
        mark = bindings.checkpoint()
        cp = _ClauseCP(goal, list(clauses), None, 0, 0, mark)
        yield from self._run(_FAIL_CONT, bindings, [cp], hits)

    def solve_choice(self, left, right, bindings, hits=None):
        """Run ``left # right`` on caller-owned bindings; yields per success."""
        if hits is None:
            hits = [0]
        goal = Choice(left, right)
        yield from self._run((("goal", goal, 0, 0), None), bindings, [], hits)

    def solve_collect(self, goal, answer_vars=None):
        """Collect up to max_solutions answers for an already-parsed goal."""
        if answer_vars is None:
            answer_vars = [v for v in free_goal_vars(goal) if v.name != "_"]
        cfg = self.cfg
        hits = [0]
        bindings = Bindings()
        stream = self._run((("goal", goal, 0, 0), None), bindings, [], hits)
        solutions = []
        error = None
        truncated = False
        try:
            for _ in stream:
                solutions.append(Solution.from_bindings(answer_vars, bindings))
                if (
                    cfg.max_solutions is not None
                    and len(solutions) >= cfg.max_solutions
                ):
                    try:
                        next(stream)
                        truncated = True
                    except StopIteration:
                        pass
                    break
        except MupError as exc:
            error = exc
        if error is not None:
            return QueryResult(solutions, ERRORED, error)
        if truncated or hits[0]:
            return QueryResult(solutions, LIMITED)
        return QueryResult(solutions, EXHAUSTED)

    def run_query(self, text):
        """Parse and solve ``text``; collect up to max_solutions answers."""
        query = parse_query(text)
        return self.solve_collect(query.goal, query.answer_vars)

    # -- machine -----------------------------------------------------------

    def _emit(self, kind, depth, payload):
        self.trace(TraceEvent(kind, depth, payload))

    def _run(self, cont, bindings, cps, hits):
        """Drive the machine; yields None once per success."""
        cfg = self.cfg
        trace = self.trace
        program = self.program
        bmap = bindings.map
        btrail = bindings.trail
        occ = cfg.occurs_check
        depth_limit = cfg.depth_limit
        first_mode = cfg.commit_mode == "first"
        ctx = BuiltinContext(bindings, self.io, occ)
        base_mark = bindings.checkpoint()

        while True:
            if cont is None:
                yield None
                cont = self._backtrack(bindings, cps, hits)
                if cont is None:
                    bindings.undo_to(base_mark)
                    return
                continue

            frame, cont = cont
            tag = frame[0]

            if tag == "goal":
                _, goal, depth, cutb = frame
                gt = type(goal)
                if trace is not None:
                    self._emit("reduce", depth, pretty_goal(goal))

                if gt is TrueGoal:
                    continue

                if gt is Conj:
                    cont = (
                        ("goal", goal.left, depth, cutb),
                        (("goal", goal.right, depth, cutb), cont),
                    )
                    continue

                if gt is Eq:
                    ok = _kunify(goal.left, goal.right, bmap, btrail, occ)
                    if trace is not None:
                        self._emit(
                            "unify_ok" if ok else "unify_fail",
                            depth,
                            pretty_goal(goal),
                        )
                    if not ok:
                        cont = self._backtrack(bindings, cps, hits)
                        if cont is None:
                            bindings.undo_to(base_mark)
                            return
                    continue

                if gt is Call:
                    goal_term = bindings.deref(goal.term)
                    tt = type(goal_term)
                    if tt is Var:
                        raise MupError("goal is an unbound variable")
                    if tt is Num:
                        raise MupError(
                            "number is not a callable goal: %s" % pretty(goal_term)
                        )
                    key = _indicator(goal_term)
                    builtin = BUILTINS.get(key)
                    if builtin is not None:
                        args = (
                            goal_term.args if tt is Compound else ()
                        )
                        if builtin.fn(ctx, args):
                            continue
                        cont = self._backtrack(bindings, cps, hits)
                        if cont is None:
                            bindings.undo_to(base_mark)
                            return
                        continue
                    clauses = program.clauses_for(*key)
                    if clauses is None:
                        if cfg.unknown_predicate == "error":
                            raise UnknownPredicateError(
                                "unknown predicate %s/%d" % key
                            )
                        cont = self._backtrack(bindings, cps, hits)
                        if cont is None:
                            bindings.undo_to(base_mark)
                            return
                        continue
                    if depth_limit is not None and depth + 1 > depth_limit:
                        hits[0] += 1
                        cont = self._backtrack(bindings, cps, hits)
                        if cont is None:
                            bindings.undo_to(base_mark)
                            return
                        continue
                    if trace is not None:
                        self._emit("backchain_enter", depth, pretty(goal_term))
                        cont = (("exit", depth, pretty(goal_term)), cont)
                    cp = _ClauseCP(
                        goal_term, clauses, cont, depth,
                        len(cps), bindings.checkpoint(),
                    )
                    cps.append(cp)
                    cont = self._backtrack(bindings, cps, hits)
                    if cont is None:
                        bindings.undo_to(base_mark)
                        return
                    continue

                if gt is Choice:
                    serial = next(self._serial)
                    cp = _AltCP(
                        goal.right, cont, depth, cutb,
                        bindings.checkpoint(), serial,
                        True, hits[0], (goal.left, goal.right),
                    )
                    cps.append(cp)
                    cont = (
                        ("goal", goal.left, depth, cutb),
                        (
                            ("commit", serial, len(cps) - 1, first_mode,
                             (goal.left, goal.right, depth)),
                            cont,
                        ),
                    )
                    continue

                if gt is ClassicalOr:
                    cp = _AltCP(
                        goal.right, cont, depth, cutb,
                        bindings.checkpoint(), next(self._serial),
                        False, hits[0], None,
                    )
                    cps.append(cp)
                    cont = (("goal", goal.left, depth, cutb), cont)
                    continue

                if gt is Exists:
                    witness = fresh_var(goal.var.name)
                    body = subst_goal(goal.body, {goal.var.id: witness})
                    cont = (("goal", body, depth, cutb), cont)
                    continue

                if gt is SoftIfThenElse:
                    serial = next(self._serial)
                    cp = _AltCP(
                        goal.els, cont, depth, cutb,
                        bindings.checkpoint(), serial,
                        True, hits[0], None,
                    )
                    cps.append(cp)
                    cont = (
                        ("goal", goal.cond, depth, cutb),
                        (
                            ("commit", serial, len(cps) - 1, False, None),
                            (("goal", goal.then, depth, cutb), cont),
                        ),
                    )
                    continue

                if gt is Cut:
                    if cutb < len(cps):
                        del cps[cutb:]
                    continue

                raise MupError("cannot solve goal: %r" % (goal,))

            if tag == "commit":
                _, serial, index, first, info = frame
                if index < len(cps):
                    cp = cps[index]
                    if (
                        type(cp) is _AltCP
                        and cp.serial == serial
                        and not cp.disabled
                    ):
                        cp.disabled = True
                        if trace is not None and info is not None:
                            left, right, depth = info
                            self._emit(
                                "choice_taken", depth,
                                "left %s" % pretty_goal(left),
                            )
                            self._emit(
                                "choice_discarded", depth,
                                "right %s" % pretty_goal(right),
                            )
                        if first:
                            del cps[index:]
                continue

            if tag == "exit":
                self._emit("backchain_exit", frame[1], frame[2])
                continue

            # "fail": entry point for pre-seeded choicepoints
            cont = self._backtrack(bindings, cps, hits)
            if cont is None:
                bindings.undo_to(base_mark)
                return

    def _backtrack(self, bindings, cps, hits):
        """Resume the most recent choicepoint; None when all are spent."""
        trace = self.trace
        while cps:
            cp = cps[-1]
            if type(cp) is _ClauseCP:
                cont = self._next_clause(cp, bindings, cps)
                if cont is not None:
                    return cont
                bindings.undo_to(cp.mark)
                cps.pop()
                continue
            cps.pop()
            bindings.undo_to(cp.mark)
            if cp.disabled:
                continue
            if cp.is_choice and hits[0] != cp.hits_at_push:
                # The first disjunct was cut off by the depth limit, so its
                # failure is not finite failure: do not fall through.
                continue
            if trace is not None and cp.info is not None:
                left, right = cp.info
                self._emit("choice_taken", cp.depth, "right %s" % pretty_goal(right))
                self._emit("choice_discarded", cp.depth, "left %s" % pretty_goal(left))
            return (("goal", cp.right, cp.depth, cp.barrier), cp.cont)
        return None

    def _next_clause(self, cp, bindings, cps):
        """Try cp's remaining clauses; return the body continuation or None."""
        trace = self.trace
        occ = self.cfg.occurs_check
        bmap = bindings.map
        btrail = bindings.trail
        while cp.idx < len(cp.clauses):
            clause = cp.clauses[cp.idx]
            cp.idx += 1
            bindings.undo_to(cp.mark)
            renamed = fresh_rename(clause)
            ok = _kunify(renamed.head, cp.goal, bmap, btrail, occ)
            if trace is not None:
                self._emit(
                    "unify_ok" if ok else "unify_fail",
                    cp.depth,
                    "%s ~ %s" % (pretty(renamed.head), pretty(cp.goal)),
                )
            if ok:
                if cp.idx >= len(cp.clauses):
                    cps.pop()  # no candidates left; drop the choicepoint
                return (
                    ("goal", renamed.body, cp.depth + 1, cp.barrier),
                    cp.cont,
                )
        return None


def _indicator(term):
    if type(term) is Compound:
        return (term.functor, len(term.args))
    return (term.name, 0)


# -- module-level convenience wrappers --------------------------------------


def solve(program, goal, cfg=None, io=None, trace=None, answer_vars=None):
    """Stream of Solutions for ``goal`` against ``program``."""
    return Engine(program, cfg, io, trace).solve(goal, answer_vars)


def backchain(clauses, program, atom, bindings, cfg=None, io=None, trace=None):
    """Prove atomic ``atom`` by backchaining on the given clause group."""
    return Engine(program, cfg, io, trace).backchain(atom, bindings, clauses)


def solve_choice(program, left, right, bindings, cfg=None, io=None, trace=None):
    """Committed choice between two goals on caller-owned bindings."""
    return Engine(program, cfg, io, trace).solve_choice(left, right, bindings)


def run_query(program, text, cfg=None, io=None, trace=None):
    """Parse and run a query; returns QueryResult(solutions, outcome)."""
    return Engine(program, cfg, io, trace).run_query(text)
