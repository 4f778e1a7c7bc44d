"""Point-cloud kernels with a compiled fast path.

The Cython extension is picked up at import time when available; setting
``CMFPLAN_PURE_PYTHON=1`` forces the numpy fallback.  Both lanes share
identical tie-breaking and padding semantics (see ``pure.py``), verified
by the parity tests; ``benchmarks/bench_kernels.py`` compares their
speed.
"""

import os

import numpy as np

from . import pure

if os.environ.get("CMFPLAN_PURE_PYTHON") == "1":
    _impl = pure
    IMPLEMENTATION = "pure"
else:
    try:
        from . import _ckernels as _impl

        IMPLEMENTATION = "compiled"
    except ImportError:
        _impl = pure
        IMPLEMENTATION = "pure"


def _as_points(a) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[1] != 3:
        raise ValueError(f"expected an (N, 3) array, got shape {a.shape}")
    return a


def lex_smallest_index(coords) -> int:
    return int(_impl.lex_smallest_index(_as_points(coords)))


def fps(coords, k: int, seed_index: int, lex_ties: bool = False) -> np.ndarray:
    return np.asarray(_impl.fps(_as_points(coords), int(k), int(seed_index), bool(lex_ties)))


def ball_query(points, centers, radius: float, cap: int) -> np.ndarray:
    return np.asarray(
        _impl.ball_query(_as_points(points), _as_points(centers), float(radius), int(cap))
    )


def three_nn(queries, refs) -> tuple[np.ndarray, np.ndarray]:
    idx, dist = _impl.three_nn(_as_points(queries), _as_points(refs))
    return np.asarray(idx), np.asarray(dist)


def scatter_add_rows(out: np.ndarray, idx: np.ndarray, src: np.ndarray) -> None:
    if not (out.flags.c_contiguous and out.dtype == np.float64):
        raise ValueError("out must be a C-contiguous float64 array")
    _impl.scatter_add_rows(out, np.ascontiguousarray(idx, dtype=np.int64),
                           np.ascontiguousarray(src, dtype=np.float64))
