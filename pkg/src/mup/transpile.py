"""Source-to-source translation to standard, cut-based Prolog.

Every committed-choice goal ``G0 # G1`` becomes a call to a fresh
auxiliary predicate carrying the goal's free variables:

* hard_cut mode emits the classic two-clause encoding of ``(G0, !) ; G1``::

      '$choice_N'(Vars) :- G0, !.
      '$choice_N'(Vars) :- G1.

* soft_cut mode emits ``'$choice_N'(Vars) :- (G0 *-> true ; G1).``

Wrapping in an auxiliary predicate keeps the cut local to the choice:
an inline ``!`` would also prune the enclosing clause's alternatives,
which is stronger than dropping one disjunct.  The emitted text reparses
under this package's own ``prolog`` dialect, which is how the
translation is checked against the engine.
"""

import re

from mup.errors import TranslateError
from mup.syntax import (
    Call,
    Choice,
    ClassicalOr,
    Clause,
    Conj,
    Cut,
    Exists,
    SoftIfThenElse,
    TRUE,
    free_goal_vars,
    goal_children,
    goal_terms,
    pretty_clause,
    subst_goal,
    subst_term,
    term_vars,
)
from mup.terms import Compound, Const, Var, fresh_var

MODES = ("hard_cut", "soft_cut")

_AUX_PREFIX = "$choice_"


def translate(program, mode="hard_cut", source_name=None):
    """Emit standard Prolog text equivalent to ``program``.

    Programs without ``#`` come out textually identical modulo
    whitespace.  Raises TranslateError if user code already uses the
    ``$choice_`` namespace.
    """
    if mode not in MODES:
        raise TranslateError("unknown translation mode %r" % (mode,))
    _check_collisions(program)

    lines = []
    if source_name:
        lines.append("%% %s, translated (mode: %s)" % (source_name, mode))
    else:
        lines.append("%% translated (mode: %s)" % (mode,))
    counter = [0]
    for clause in program.clauses:
        clause = _uniquify_names(clause)
        aux_acc = []
        order = _clause_var_order(clause)
        body = _tx_goal(clause.body, order, counter, aux_acc, mode)
        lines.append(pretty_clause(Clause(clause.head, body)))
        for aux in aux_acc:
            lines.append(pretty_clause(aux))
    return "\n".join(lines) + "\n"


_VAR_NAME = re.compile(r"^[A-Z_][A-Za-z0-9_]*$")


def _uniquify_names(clause):
    """Give every distinct variable of the clause a distinct printable name.

    Parsed clauses already satisfy this (the parser scopes names), but
    programmatic ASTs may carry duplicate or unprintable display names,
    which would silently merge or break variables when the emitted text
    is read back.
    """
    order = _clause_var_order(clause)
    taken = {v.name for v in order}
    seen_names = set()
    mapping = {}
    for v in order:
        bad = v.name == "_" or not _VAR_NAME.match(v.name)
        if not bad and v.name not in seen_names:
            seen_names.add(v.name)
            continue
        base = v.name if _VAR_NAME.match(v.name) and v.name != "_" else "_V"
        n = 2
        candidate = "%s_%d" % (base, n)
        while candidate in taken or candidate in seen_names:
            n += 1
            candidate = "%s_%d" % (base, n)
        seen_names.add(candidate)
        taken.add(candidate)
        mapping[v.id] = Var(v.id, candidate)
    if not mapping:
        return clause
    return Clause(
        subst_term(clause.head, mapping),
        subst_goal(clause.body, mapping),
        clause.span,
    )


def _tx_goal(goal, order, counter, aux_acc, mode):
    t = type(goal)
    if t is Choice:
        left = _tx_goal(goal.left, order, counter, aux_acc, mode)
        right = _tx_goal(goal.right, order, counter, aux_acc, mode)
        counter[0] += 1
        name = "%s%d" % (_AUX_PREFIX, counter[0])
        in_choice = {v.id for v in free_goal_vars(Conj(left, right))}
        params = tuple(v for v in order if v.id in in_choice)
        head = Compound(name, params) if params else Const(name)
        if mode == "hard_cut":
            aux_acc.append(Clause(head, Conj(left, Cut())))
            aux_acc.append(Clause(head, right))
        else:
            aux_acc.append(Clause(head, SoftIfThenElse(left, TRUE, right)))
        return Call(head)
    if t is Conj:
        return Conj(
            _tx_goal(goal.left, order, counter, aux_acc, mode),
            _tx_goal(goal.right, order, counter, aux_acc, mode),
        )
    if t is ClassicalOr:
        return ClassicalOr(
            _tx_goal(goal.left, order, counter, aux_acc, mode),
            _tx_goal(goal.right, order, counter, aux_acc, mode),
        )
    if t is Exists:
        # Clause-local variables are implicitly existential in the target,
        # so drop the quantifier; rename the binder if its display name
        # collides with anything else in the clause.
        replacement = fresh_var("_E%d" % goal.var.id)
        body = subst_goal(goal.body, {goal.var.id: replacement})
        return _tx_goal(body, order + [replacement], counter, aux_acc, mode)
    return goal


def _clause_var_order(clause):
    seen = set()
    out = []
    term_vars(clause.head, seen, out)

    def walk(goal):
        for term in goal_terms(goal):
            term_vars(term, seen, out)
        for child in goal_children(goal):
            walk(child)

    walk(clause.body)
    return out


def _check_collisions(program):
    for clause in program.clauses:
        name = clause.indicator()[0]
        if name.startswith(_AUX_PREFIX):
            raise TranslateError(
                "predicate name %r collides with the translator's "
                "auxiliary namespace" % (name,)
            )
        for called in _called_names(clause.body):
            if called.startswith(_AUX_PREFIX):
                raise TranslateError(
                    "call to %r collides with the translator's "
                    "auxiliary namespace" % (called,)
                )


def _called_names(goal):
    if type(goal) is Call:
        term = goal.term
        if type(term) is Compound:
            yield term.functor
        elif type(term) is Const:
            yield term.name
    for child in goal_children(goal):
        yield from _called_names(child)
