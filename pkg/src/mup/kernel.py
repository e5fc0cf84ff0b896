"""Kernel backend selection.

Imports the compiled term kernel when available, the pure-Python one
otherwise.  Set ``MUP_PURE_PYTHON=1`` to force the fallback (used by the
benchmark to compare both backends and by tests to pin a backend).

Everything downstream imports term types and kernel operations from this
module, never from a backend directly.
"""

import os

if os.environ.get("MUP_PURE_PYTHON"):
    from mup import _kernel_py as _backend
else:
    try:
        from mup import _kernel_c as _backend  # type: ignore[no-redef]
    except ImportError:
        from mup import _kernel_py as _backend  # type: ignore[no-redef]

IMPL = _backend.IMPL

Var = _backend.Var
Const = _backend.Const
Num = _backend.Num
Compound = _backend.Compound

deref = _backend.deref
resolve = _backend.resolve
bind = _backend.bind
undo_to = _backend.undo_to
occurs = _backend.occurs
unify = _backend.unify
rename_term = _backend.rename_term
