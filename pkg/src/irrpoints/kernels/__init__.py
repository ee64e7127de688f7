"""Hot lattice-set kernels: compiled when the extension is built, numpy otherwise.

Set ``IRRPOINTS_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKENDS = {"python": _pykernels.reducible_mask}

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels.reducible_mask

if _ckernels is not None and not os.environ.get("IRRPOINTS_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

reducible_mask = BACKENDS[BACKEND]

__all__ = ["BACKEND", "BACKENDS", "reducible_mask"]
