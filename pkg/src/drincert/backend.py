"""Kernel backend selection.

The compiled Cython module is used when it was built; otherwise the numpy
fallback is imported.  Setting ``DRINCERT_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _fallback

if os.environ.get("DRINCERT_PURE") == "1":
    _impl = _fallback
    NAME = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        NAME = "cython"
    except ImportError:  # extension not built
        _impl = _fallback
        NAME = "python"

polmulmod = _impl.polmulmod
polgcd = _impl.polgcd
rref = _impl.rref
frobmat = _impl.frobmat
gl3_mul = _impl.gl3_mul
gl3_closure = _impl.gl3_closure


def available_backends() -> dict:
    """Map of backend name to module, for cross-checking and benchmarks."""
    out = {"python": _fallback}
    try:
        from . import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out
