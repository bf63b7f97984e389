"""Backend selection for the module-lattice kernel.

The compiled extension is used when it imports; set UMLATTICE_PURE_PYTHON=1
to force the pure-Python implementation.
"""

import os

from . import _kernel_py

BACKEND = "python"
_impl = _kernel_py

if os.environ.get("UMLATTICE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _compiled
    except ImportError:
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "cython"

WindowError = _kernel_py.WindowError
hermite = _impl.hermite
contains = _impl.contains
dual = _impl.dual
meet = _impl.meet
join = _impl.join
ascend = _impl.ascend
descend = _impl.descend
combine = _kernel_py.combine
columns = _kernel_py.columns


def backends():
    """Available backend modules keyed by name."""
    out = {"python": _kernel_py}
    try:
        from . import _kernel as compiled
        out["cython"] = compiled
    except ImportError:
        pass
    return out
