"""Kernel backend selection.

The compiled extension is used when it imported cleanly and the group has at
most 64 generators; ``RACG_PURE_PYTHON=1`` forces the Python twin.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

MAX_COMPILED_GENERATORS = 64


def _forced_python() -> bool:
    return os.environ.get("RACG_PURE_PYTHON", "") not in ("", "0")


def compiled_available() -> bool:
    return _compiled is not None


def backend_module(ngens: int = 0, backend: str | None = None):
    """Return the kernel module to use: ``backend`` may be "cython" or "python"."""
    if backend == "python":
        return _pykernels
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    if _compiled is None or _forced_python() or ngens > MAX_COMPILED_GENERATORS:
        return _pykernels
    return _compiled


def make_kernel(comm, backend: str | None = None):
    return backend_module(len(comm), backend).WordKernel(comm)


BACKEND = backend_module().BACKEND


def pack_words(words):
    """Flatten a list of byte words into (flat uint8 array, int64 offsets)."""
    offsets = np.zeros(len(words) + 1, dtype=np.int64)
    np.cumsum([len(w) for w in words], out=offsets[1:])
    flat = np.frombuffer(b"".join(words), dtype=np.uint8).copy()
    return flat, offsets


def pack_coordinates(points, ncol: int):
    """Flatten per-colour integer label sequences for ``product_distance_rows``.

    ``points[i][c]`` is the label sequence of element ``i`` in colour ``c``.
    """
    lengths = [len(seq) for pt in points for seq in pt]
    offsets = np.zeros(len(lengths) + 1, dtype=np.int64)
    np.cumsum(lengths, out=offsets[1:])
    labels = np.fromiter(
        (x for pt in points for seq in pt for x in seq), dtype=np.int64, count=offsets[-1]
    )
    return labels, offsets


def product_distance_rows(labels, offsets, ncol, lo, hi, backend: str | None = None):
    return backend_module(0, backend).product_distance_rows(labels, offsets, ncol, lo, hi)
