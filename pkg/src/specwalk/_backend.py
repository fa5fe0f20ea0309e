"""Select the kernel implementation at import time.

The compiled extension is used when it imports; setting the environment
variable ``SPECWALK_PURE_PYTHON=1`` forces the NumPy fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _load_compiled() -> ModuleType | None:
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


compiled = _load_compiled()

if compiled is not None and not os.environ.get("SPECWALK_PURE_PYTHON"):
    kernels: ModuleType = compiled
    BACKEND = "compiled"
else:
    kernels = _pykernels
    BACKEND = "python"


def get(name: str) -> ModuleType:
    """Return the kernel module called ``"compiled"`` or ``"python"``."""
    if name == "python":
        return _pykernels
    if name == "compiled":
        if compiled is None:
            raise ImportError("compiled kernels are not built")
        return compiled
    raise ValueError(f"unknown backend {name!r}")
