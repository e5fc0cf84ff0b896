"""Pure-Python term kernel.

Terms, shallow/deep dereferencing, the binding trail, first-order
unification and clause-variable renaming.  This module is the fallback
implementation of the kernel API; ``mup._kernel_c`` is the compiled twin
with the same surface.  ``mup.kernel`` picks one at import time.

Representation notes:

* A variable is identified by an integer id; two ``Var`` objects denote
  the same variable iff their ids are equal.  Display names exist only
  for printing.
* Bindings live in a plain dict ``{var_id: term}`` plus a trail list of
  var ids in binding order.  Undoing to a trail mark deletes everything
  bound after the mark.
* Lists are ordinary compounds: ``'.'(Head, Tail)`` ending in ``'[]'``.
"""

IMPL = "python"


class Var:
    __slots__ = ("id", "name")

    def __init__(self, id, name):
        self.id = id
        self.name = name

    def __eq__(self, other):
        return type(other) is Var and other.id == self.id

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return "Var(%d, %r)" % (self.id, self.name)


class Const:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __eq__(self, other):
        return type(other) is Const and other.name == self.name

    def __hash__(self):
        return hash(("const", self.name))

    def __repr__(self):
        return "Const(%r)" % (self.name,)


class Num:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __eq__(self, other):
        # 3 and 3.0 are distinct terms, so compare classes as well.
        return (
            type(other) is Num
            and type(other.value) is type(self.value)
            and other.value == self.value
        )

    def __hash__(self):
        return hash((type(self.value).__name__, self.value))

    def __repr__(self):
        return "Num(%r)" % (self.value,)


class Compound:
    __slots__ = ("functor", "args")

    def __init__(self, functor, args):
        self.functor = functor
        self.args = tuple(args)

    def __eq__(self, other):
        # Iterative: lists nest one compound per element, so deep spines
        # must not recurse through the host stack.
        if type(other) is not Compound:
            return False
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            ta = type(a)
            if ta is not type(b):
                return False
            if ta is Compound:
                if a.functor != b.functor or len(a.args) != len(b.args):
                    return False
                stack.extend(zip(a.args, b.args))
            elif ta is Var:
                if a.id != b.id:
                    return False
            elif ta is Const:
                if a.name != b.name:
                    return False
            elif ta is Num:
                if type(a.value) is not type(b.value) or a.value != b.value:
                    return False
            elif a != b:
                return False
        return True

    def __hash__(self):
        # Spine-friendly: fold functors and leaf hashes along the spine
        # instead of hashing nested tuples.
        h = hash("compound")
        stack = [self]
        while stack:
            t = stack.pop()
            if type(t) is Compound:
                h = hash((h, t.functor, len(t.args)))
                stack.extend(t.args)
            else:
                h = hash((h, hash(t)))
        return h

    def __repr__(self):
        return "Compound(%r, %r)" % (self.functor, self.args)


def deref(t, bmap):
    """Follow the outermost variable chain of ``t`` through ``bmap``.

    Shallow: arguments of a compound result are not touched.
    """
    while type(t) is Var:
        nxt = bmap.get(t.id)
        if nxt is None:
            return t
        t = nxt
    return t


def resolve(t, bmap):
    """Replace every bound variable in ``t``, at every depth, by its value.

    Iterative postorder rebuild, so arbitrarily long list spines resolve
    in constant host stack.
    """
    t = deref(t, bmap)
    if type(t) is not Compound:
        return t
    stack = [[t, 0, []]]  # frames: node, next arg index, rebuilt args
    while True:
        frame = stack[-1]
        node = frame[0]
        idx = frame[1]
        if idx == len(node.args):
            built = Compound(node.functor, tuple(frame[2]))
            stack.pop()
            if not stack:
                return built
            stack[-1][2].append(built)
            continue
        frame[1] = idx + 1
        child = deref(node.args[idx], bmap)
        if type(child) is Compound:
            stack.append([child, 0, []])
        else:
            frame[2].append(child)


def bind(bmap, trail, var, t):
    """Bind ``var`` to ``t`` and record the binding on the trail."""
    bmap[var.id] = t
    trail.append(var.id)


def undo_to(bmap, trail, mark):
    """Unbind every variable bound after trail position ``mark``."""
    while len(trail) > mark:
        del bmap[trail.pop()]


def occurs(vid, t, bmap):
    """True iff variable ``vid`` occurs in ``t`` under ``bmap``."""
    stack = [t]
    while stack:
        x = deref(stack.pop(), bmap)
        tx = type(x)
        if tx is Var:
            if x.id == vid:
                return True
        elif tx is Compound:
            stack.extend(x.args)
    return False


def unify(t, s, bmap, trail, occurs_check):
    """Extend ``bmap`` to a most general unifier of ``t`` and ``s``.

    Returns True on success with the new bindings trailed; on failure the
    store is restored to its pre-call state and False is returned.
    """
    mark = len(trail)
    stack = [(t, s)]
    while stack:
        a, b = stack.pop()
        a = deref(a, bmap)
        b = deref(b, bmap)
        ta = type(a)
        tb = type(b)
        if ta is Var:
            if tb is Var and b.id == a.id:
                continue
            if occurs_check and occurs(a.id, b, bmap):
                undo_to(bmap, trail, mark)
                return False
            bind(bmap, trail, a, b)
            continue
        if tb is Var:
            if occurs_check and occurs(b.id, a, bmap):
                undo_to(bmap, trail, mark)
                return False
            bind(bmap, trail, b, a)
            continue
        if ta is not tb:
            undo_to(bmap, trail, mark)
            return False
        if ta is Const:
            if a.name != b.name:
                undo_to(bmap, trail, mark)
                return False
        elif ta is Num:
            if type(a.value) is not type(b.value) or a.value != b.value:
                undo_to(bmap, trail, mark)
                return False
        else:  # Compound
            if a.functor != b.functor or len(a.args) != len(b.args):
                undo_to(bmap, trail, mark)
                return False
            stack.extend(zip(a.args, b.args))
    return True


def rename_term(t, mapping, make_var):
    """Copy ``t`` with every variable replaced via ``mapping``.

    ``mapping`` maps old var id -> replacement Var and is extended through
    ``make_var(old_var)`` on first sight, so shared variables stay shared.
    """
    tt = type(t)
    if tt is Var:
        new = mapping.get(t.id)
        if new is None:
            new = make_var(t)
            mapping[t.id] = new
        return new
    if tt is Compound:
        args = tuple(rename_term(a, mapping, make_var) for a in t.args)
        return Compound(t.functor, args)
    return t
