"""Backend selection for the split-search kernels.

The compiled extension is preferred when importable; otherwise the numpy
fallback is used.  ``DIAPRED_BACKEND=python`` forces the fallback (useful
for benchmarking), ``DIAPRED_BACKEND=compiled`` makes a missing extension a
hard error instead of a silent slowdown.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

from . import _split_numpy

_BACKENDS = {"python": SimpleNamespace(
    name="python",
    best_split_gini=_split_numpy.best_split_gini,
    best_split_sse=_split_numpy.best_split_sse,
)}

try:
    from . import _split_kernels

    _BACKENDS["compiled"] = SimpleNamespace(
        name="compiled",
        best_split_gini=_split_kernels.best_split_gini,
        best_split_sse=_split_kernels.best_split_sse,
    )
except ImportError:
    pass


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def get_backend(name: str | None = None) -> SimpleNamespace:
    """Resolve a backend by name; ``None`` picks the import-time default."""
    if name is None:
        return DEFAULT
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown split backend {name!r}; available: {available_backends()}"
        ) from None


_requested = os.environ.get("DIAPRED_BACKEND")
if _requested:
    DEFAULT = get_backend(_requested)
else:
    DEFAULT = _BACKENDS.get("compiled", _BACKENDS["python"])
