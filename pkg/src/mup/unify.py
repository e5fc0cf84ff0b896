"""Public unification entry point over a Bindings store.

Thin wrapper around the selected kernel's unifier; exists so callers
deal in Bindings objects and an occurs-check flag rather than raw
map/trail pairs.
"""

from mup import kernel


def unify(t, s, bindings, occurs_check=False):
    """Extend ``bindings`` to a most general unifier of ``t`` and ``s``.

    True on success; on failure ``bindings`` is restored exactly (the
    trail rewinds any partial work).  Failure is an expected outcome,
    not an error.  With the occurs check off, unifying a variable with a
    term containing it builds a cyclic store; that is undefined behaviour,
    as in standard Prolog.
    """
    return kernel.unify(t, s, bindings.map, bindings.trail, occurs_check)
