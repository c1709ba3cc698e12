"""Entropy kernel selection: compiled extension with pure-Python fallback.

Both backends expose the same three functions over packed C-int
arrays and are required to produce bit-identical floats (same
summation order, same libm log2, no FP contraction on the compiled
side). The active backend is picked at import time; set
``INFODD_KERNEL=pure`` or ``INFODD_KERNEL=c`` to force one.
"""

from __future__ import annotations

import os

from . import pure

__all__ = [
    "BACKEND",
    "conditional_entropies",
    "subset_entropy",
    "constant_output",
    "available_backends",
]


def _select():
    forced = os.environ.get("INFODD_KERNEL", "").strip().lower()
    if forced in ("pure", "py", "python"):
        return pure, "pure"
    try:
        from infodd import _fastkern
    except ImportError:
        if forced in ("c", "ext", "fast"):
            raise ImportError(
                "INFODD_KERNEL=c requested but the compiled kernel "
                "is not installed"
            ) from None
        return pure, "pure"
    return _fastkern, "c"


_active, BACKEND = _select()

conditional_entropies = _active.conditional_entropies
subset_entropy = _active.subset_entropy
constant_output = _active.constant_output


def available_backends() -> dict:
    """Importable kernel modules by name, for parity tests and benchmarks."""
    found = {"pure": pure}
    try:
        from infodd import _fastkern
    except ImportError:
        pass
    else:
        found["c"] = _fastkern
    return found
