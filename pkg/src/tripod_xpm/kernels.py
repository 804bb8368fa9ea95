"""Backend selection for the susceptibility kernel.

The compiled extension is used when it imports; otherwise the numpy
implementation is used.  Set ``TRIPOD_XPM_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _kernels_py

BACKEND = "numpy"
closed_form_subsystem = _kernels_py.closed_form_subsystem

if os.environ.get("TRIPOD_XPM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        closed_form_subsystem = _ckernels.closed_form_subsystem

__all__ = ["BACKEND", "closed_form_subsystem"]
