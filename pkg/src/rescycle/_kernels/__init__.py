"""Numerical kernels with a compiled core and a numpy fallback.

The compiled module is used when it imports; set ``RESCYCLE_PURE_PYTHON=1``
to force the fallback.

Modules
-------
_core
    Cython implementation (``_core.pyx``).
_fallback
    Numpy implementation with the same call signatures.
"""

import os

from . import _fallback

BACKEND = "python"
local_linear = _fallback.local_linear
powerlaw_scan = _fallback.powerlaw_scan

if not os.environ.get("RESCYCLE_PURE_PYTHON"):
    try:
        from . import _core
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        local_linear = _core.local_linear
        powerlaw_scan = _core.powerlaw_scan

__all__ = ["BACKEND", "local_linear", "powerlaw_scan"]
