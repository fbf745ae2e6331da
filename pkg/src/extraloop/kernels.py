"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the NumPy
fallback. ``EXTRALOOP_PURE=1`` forces the fallback. Tests and the benchmark
reach a specific backend through :func:`backend`.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def backend(name: str | None = None) -> ModuleType:
    """Return the kernel module called ``name`` ("compiled" or "python")."""
    if name is None:
        name = BACKEND
    if name == "python":
        return _kernels_py
    if name == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def available() -> list[str]:
    return ["python"] + (["compiled"] if _compiled is not None else [])


if _compiled is not None and os.environ.get("EXTRALOOP_PURE", "") not in ("1", "true", "yes"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

_active = backend(BACKEND)

ASSOC = _kernels_py.ASSOC
EXTRA1 = _kernels_py.EXTRA1
EXTRA2 = _kernels_py.EXTRA2
EXTRA3 = _kernels_py.EXTRA3
MOUFANG = _kernels_py.MOUFANG

is_latin = _active.is_latin
find_identity_failure = _active.find_identity_failure
find_cc_failure = _active.find_cc_failure
nucleus_mask = _active.nucleus_mask
associator_value_mask = _active.associator_value_mask
closure = _active.closure
normal_closure = _active.normal_closure
