# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernel.

Same surface as ``mup._kernel_py`` (see there for representation notes);
built as an optional extension and preferred by ``mup.kernel`` when it
imports cleanly.
"""

IMPL = "c"


cdef class Var:
    cdef public long long id
    cdef public str name

    def __init__(self, long long id, str name):
        self.id = id
        self.name = name

    def __eq__(self, other):
        return type(other) is Var and (<Var>other).id == self.id

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return "Var(%d, %r)" % (self.id, self.name)


cdef class Const:
    cdef public str name

    def __init__(self, str name):
        self.name = name

    def __eq__(self, other):
        return type(other) is Const and (<Const>other).name == self.name

    def __hash__(self):
        return hash(("const", self.name))

    def __repr__(self):
        return "Const(%r)" % (self.name,)


cdef class Num:
    cdef public object value

    def __init__(self, value):
        self.value = value

    def __eq__(self, other):
        if type(other) is not Num:
            return False
        v = (<Num>other).value
        return type(v) is type(self.value) and v == self.value

    def __hash__(self):
        return hash((type(self.value).__name__, self.value))

    def __repr__(self):
        return "Num(%r)" % (self.value,)


cdef class Compound:
    cdef public str functor
    cdef public tuple args

    def __init__(self, str functor, args):
        self.functor = functor
        self.args = tuple(args)

    def __eq__(self, other):
        # Iterative: lists nest one compound per element, so deep spines
        # must not recurse through the C stack.
        if type(other) is not Compound:
            return False
        cdef list stack = [(self, other)]
        cdef object a, b
        while stack:
            a, b = <tuple>stack.pop()
            if type(a) is not type(b):
                return False
            if type(a) is Compound:
                if (
                    (<Compound>a).functor != (<Compound>b).functor
                    or len((<Compound>a).args) != len((<Compound>b).args)
                ):
                    return False
                stack.extend(zip((<Compound>a).args, (<Compound>b).args))
            elif type(a) is Var:
                if (<Var>a).id != (<Var>b).id:
                    return False
            elif type(a) is Const:
                if (<Const>a).name != (<Const>b).name:
                    return False
            elif type(a) is Num:
                if (
                    type((<Num>a).value) is not type((<Num>b).value)
                    or (<Num>a).value != (<Num>b).value
                ):
                    return False
            elif a != b:
                return False
        return True

    def __hash__(self):
        # Spine-friendly: fold functors and leaf hashes along the spine
        # instead of hashing nested tuples.
        cdef Py_hash_t h = hash("compound")
        cdef list stack = [self]
        while stack:
            t = stack.pop()
            if type(t) is Compound:
                h = hash((h, (<Compound>t).functor, len((<Compound>t).args)))
                stack.extend((<Compound>t).args)
            else:
                h = hash((h, hash(t)))
        return h

    def __repr__(self):
        return "Compound(%r, %r)" % (self.functor, self.args)


cdef inline object _deref(object t, dict bmap):
    while type(t) is Var:
        nxt = bmap.get((<Var>t).id)
        if nxt is None:
            return t
        t = nxt
    return t


def deref(t, dict bmap):
    """Follow the outermost variable chain of ``t`` through ``bmap``."""
    return _deref(t, bmap)


def resolve(t, dict bmap):
    """Replace every bound variable in ``t``, at every depth, by its value.

    Iterative postorder rebuild, so arbitrarily long list spines resolve
    in constant stack.
    """
    t = _deref(t, bmap)
    if type(t) is not Compound:
        return t
    # Frames: [node, next arg index, rebuilt args].  Indexing stays
    # non-negative because wraparound is off module-wide.
    cdef list stack = [[t, 0, []]]
    cdef list frame
    cdef Py_ssize_t idx
    while True:
        frame = <list>stack[len(stack) - 1]
        node = frame[0]
        idx = <Py_ssize_t>frame[1]
        if idx == len((<Compound>node).args):
            built = Compound((<Compound>node).functor, tuple(<list>frame[2]))
            stack.pop()
            if not stack:
                return built
            frame = <list>stack[len(stack) - 1]
            (<list>frame[2]).append(built)
            continue
        frame[1] = idx + 1
        child = _deref((<Compound>node).args[idx], bmap)
        if type(child) is Compound:
            stack.append([child, 0, []])
        else:
            (<list>frame[2]).append(child)


def bind(dict bmap, list trail, Var var, t):
    """Bind ``var`` to ``t`` and record the binding on the trail."""
    bmap[var.id] = t
    trail.append(var.id)


cdef inline void _undo_to(dict bmap, list trail, Py_ssize_t mark):
    while len(trail) > mark:
        del bmap[trail.pop()]


def undo_to(dict bmap, list trail, Py_ssize_t mark):
    """Unbind every variable bound after trail position ``mark``."""
    _undo_to(bmap, trail, mark)


cdef bint _occurs(long long vid, object t, dict bmap):
    cdef list stack = [t]
    while stack:
        x = _deref(stack.pop(), bmap)
        if type(x) is Var:
            if (<Var>x).id == vid:
                return True
        elif type(x) is Compound:
            stack.extend((<Compound>x).args)
    return False


def occurs(long long vid, t, dict bmap):
    """True iff variable ``vid`` occurs in ``t`` under ``bmap``."""
    return _occurs(vid, t, bmap)


def unify(t, s, dict bmap, list trail, bint occurs_check):
    """Extend ``bmap`` to a most general unifier of ``t`` and ``s``.

    True on success with new bindings trailed; on failure the store is
    restored to its pre-call state.
    """
    cdef Py_ssize_t mark = len(trail)
    cdef list stack = [(t, s)]
    cdef object a, b
    while stack:
        a, b = <tuple>stack.pop()
        a = _deref(a, bmap)
        b = _deref(b, bmap)
        if type(a) is Var:
            if type(b) is Var and (<Var>b).id == (<Var>a).id:
                continue
            if occurs_check and _occurs((<Var>a).id, b, bmap):
                _undo_to(bmap, trail, mark)
                return False
            bmap[(<Var>a).id] = b
            trail.append((<Var>a).id)
            continue
        if type(b) is Var:
            if occurs_check and _occurs((<Var>b).id, a, bmap):
                _undo_to(bmap, trail, mark)
                return False
            bmap[(<Var>b).id] = a
            trail.append((<Var>b).id)
            continue
        if type(a) is not type(b):
            _undo_to(bmap, trail, mark)
            return False
        if type(a) is Const:
            if (<Const>a).name != (<Const>b).name:
                _undo_to(bmap, trail, mark)
                return False
        elif type(a) is Num:
            if (
                type((<Num>a).value) is not type((<Num>b).value)
                or (<Num>a).value != (<Num>b).value
            ):
                _undo_to(bmap, trail, mark)
                return False
        else:  # Compound
            if (
                (<Compound>a).functor != (<Compound>b).functor
                or len((<Compound>a).args) != len((<Compound>b).args)
            ):
                _undo_to(bmap, trail, mark)
                return False
            stack.extend(zip((<Compound>a).args, (<Compound>b).args))
    return True


def rename_term(t, dict mapping, make_var):
    """Copy ``t`` with every variable replaced via ``mapping``.

    ``mapping`` maps old var id -> replacement Var and is extended through
    ``make_var(old_var)`` on first sight, so shared variables stay shared.
    """
    if type(t) is Var:
        new = mapping.get((<Var>t).id)
        if new is None:
            new = make_var(t)
            mapping[(<Var>t).id] = new
        return new
    if type(t) is Compound:
        args = tuple(
            rename_term(a, mapping, make_var) for a in (<Compound>t).args
        )
        return Compound((<Compound>t).functor, args)
    return t
