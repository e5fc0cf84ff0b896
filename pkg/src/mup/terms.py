"""Term store: bindings with an undo trail, fresh variables, solutions.

The term classes themselves (Var, Const, Num, Compound) come from the
selected kernel backend and are re-exported here; everything else in the
package should import them from this module.
"""

import itertools

from mup import kernel
from mup.errors import InternalError
from mup.kernel import Compound, Const, Num, Var

EMPTY_LIST = "[]"
CONS = "."

_var_ids = itertools.count(1)


def fresh_var(name="_"):
    """Allocate a variable with a new, never-reused identifier."""
    return Var(next(_var_ids), name)


def mk_list(items, tail=None):
    """Build a cons-list term from ``items`` ending in ``tail`` (default [])."""
    result = tail if tail is not None else Const(EMPTY_LIST)
    for item in reversed(list(items)):
        result = Compound(CONS, (item, result))
    return result


class Bindings:
    """Mutable substitution with a trail for cheap undo.

    Owned by a single engine instance; never shared across threads.
    Checkpoint marks are trail positions: undoing to a mark unbinds
    exactly the variables bound after it.
    """

    __slots__ = ("map", "trail")

    def __init__(self):
        self.map = {}
        self.trail = []

    def checkpoint(self):
        """Return a mark capturing the current binding state."""
        return len(self.trail)

    def undo_to(self, mark):
        """Restore the state captured by ``mark``.

        A mark that was already undone past (or that never came from this
        store's current history) is rejected.
        """
        if not 0 <= mark <= len(self.trail):
            raise InternalError("stale or foreign checkpoint mark: %r" % (mark,))
        kernel.undo_to(self.map, self.trail, mark)

    def bind(self, var, term):
        kernel.bind(self.map, self.trail, var, term)

    def deref(self, term):
        """Resolve the outermost variable chain only."""
        return kernel.deref(term, self.map)

    def resolve(self, term):
        """Resolve bound variables at every depth; unbound ones remain."""
        return kernel.resolve(term, self.map)

    def __len__(self):
        return len(self.map)


class Solution:
    """One answer: query variable name -> fully resolved term.

    The domain is exactly the query's free variables; unbound variables in
    the range stay as Vars and are rendered canonically.
    """

    __slots__ = ("assignments",)

    def __init__(self, assignments):
        self.assignments = dict(assignments)

    @classmethod
    def from_bindings(cls, answer_vars, bindings):
        return cls((v.name, bindings.resolve(v)) for v in answer_vars)

    def canonical_key(self):
        """Hashable form, invariant under renaming of unbound variables.

        Unbound variables are numbered by first appearance while scanning
        assignments in order, so structurally equal solutions from
        different runs (or different engines) compare equal.
        """
        numbering = {}

        def walk(t):
            if type(t) is Var:
                if t.id not in numbering:
                    numbering[t.id] = len(numbering)
                return ("var", numbering[t.id])
            if type(t) is Const:
                return ("const", t.name)
            if type(t) is Num:
                return ("num", type(t.value).__name__, t.value)
            return ("compound", t.functor) + tuple(walk(a) for a in t.args)

        return tuple((name, walk(t)) for name, t in self.assignments.items())

    def __eq__(self, other):
        return (
            isinstance(other, Solution)
            and other.canonical_key() == self.canonical_key()
        )

    def __hash__(self):
        return hash(self.canonical_key())

    def render(self):
        """Printable form: ``X = t1, Y = t2`` (``true`` if nothing to show).

        Assignments of a variable to itself (i.e. the variable stayed
        free) are omitted, matching conventional toplevel output.
        """
        from mup.syntax import pretty

        display = _display_assignments(self.assignments)
        parts = [
            "%s = %s" % (name, pretty(term))
            for name, term in display
        ]
        return ", ".join(parts) if parts else "true"

    def __repr__(self):
        return "Solution(%s)" % (self.render(),)


def _display_assignments(assignments):
    """Assignments worth printing, with unbound variables given stable names.

    An unbound variable that is itself an answer variable displays under
    its own query name; any other unbound variable gets ``_G0``, ``_G1``,
    ... avoiding collisions with query names.
    """
    own_name = {}
    for name, term in assignments.items():
        if type(term) is Var and term.name == name:
            own_name.setdefault(term.id, name)
    taken = set(assignments)
    renames = {}
    counter = itertools.count()

    def display_var(v):
        if v.id in own_name:
            return Var(v.id, own_name[v.id])
        if v.id not in renames:
            while True:
                candidate = "_G%d" % next(counter)
                if candidate not in taken:
                    break
            renames[v.id] = Var(v.id, candidate)
        return renames[v.id]

    def walk(t):
        if type(t) is Var:
            return display_var(t)
        if type(t) is Compound:
            return Compound(t.functor, tuple(walk(a) for a in t.args))
        return t

    out = []
    for name, term in assignments.items():
        if type(term) is Var and own_name.get(term.id) == name:
            continue  # variable stayed free
        out.append((name, walk(term)))
    return out
