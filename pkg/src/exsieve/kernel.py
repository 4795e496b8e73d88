"""Subset-scan backend selection.

The compiled extension is used when built; otherwise the pure-Python
kernel takes over.  Set EXSIEVE_KERNEL=python or EXSIEVE_KERNEL=c to
force a backend (forcing "c" raises if the extension is missing).
"""

from __future__ import annotations

import os
from typing import Sequence

from . import _subsetscan_py

_FORCED = os.environ.get("EXSIEVE_KERNEL")

if _FORCED == "python":
    _impl = _subsetscan_py
else:
    try:
        from . import _subsetscan as _impl  # type: ignore[no-redef]
    except ImportError:
        if _FORCED == "c":
            raise
        _impl = _subsetscan_py

BACKEND = "python" if _impl is _subsetscan_py else "c"


def subset_scan(masks: Sequence[int], natoms: int, k_max: int) -> tuple[list[list[int]], list[int]]:
    """counts[k][atom] and unions[k] over all k-subsets, k = 0..k_max."""
    return _impl.subset_scan(list(masks), natoms, k_max)


def available_backends() -> dict[str, object]:
    """Importable kernels by name; 'python' is always present."""
    out: dict[str, object] = {"python": _subsetscan_py}
    try:
        from . import _subsetscan

        out["c"] = _subsetscan
    except ImportError:
        pass
    return out
