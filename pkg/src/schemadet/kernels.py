"""Backend selection for the subset kernel.

The compiled extension is used when it was built; otherwise the pure-Python
implementation is used. Setting ``SCHEMADET_PURE_PYTHON=1`` forces the
fallback.
"""
import os

from . import _pykernel

try:
    if os.environ.get("SCHEMADET_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _ckernel
except ImportError:
    _ckernel = None

BACKENDS = {"python": _pykernel.SubsetKernel}
if _ckernel is not None:
    BACKENDS["compiled"] = _ckernel.SubsetKernel

DEFAULT_BACKEND = "compiled" if _ckernel is not None else "python"


def get_kernel(backend=None):
    name = backend or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}; "
                         f"available: {sorted(BACKENDS)}") from None
