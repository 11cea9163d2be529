"""Backend selection for the hot kernels.

The compiled extension is used when it imports; set ``SKEWLAT_PURE_PYTHON=1``
to force the pure-Python fallback.  Both expose ``search``,
``n_first_choices`` and ``canonical_key`` with identical results.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

RIGHT_HANDED = _pykernels.RIGHT_HANDED
LEFT_HANDED = _pykernels.LEFT_HANDED

_compiled: ModuleType | None
try:
    from . import _ckernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def available() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def get(name: str | None = None) -> ModuleType:
    if name is None:
        name = BACKEND
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built; reinstall with Cython available")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


if os.environ.get("SKEWLAT_PURE_PYTHON") or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "cython"
