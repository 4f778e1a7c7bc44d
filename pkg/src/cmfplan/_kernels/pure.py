"""Pure numpy implementations of the point-cloud kernels.

This lane is the semantics of record: the compiled lane in
``_ckernels.pyx`` must reproduce every index exactly and every float to
within rounding of the same operation order.  All tie-breaking is
explicit (squared distance, then point coordinates lexicographically,
then index) so results do not depend on accidental input ordering.
"""

import numpy as np


def _sqdist_to(points: np.ndarray, center: np.ndarray) -> np.ndarray:
    dx = points[:, 0] - center[0]
    dy = points[:, 1] - center[1]
    dz = points[:, 2] - center[2]
    return dx * dx + dy * dy + dz * dz


def lex_smallest_index(coords: np.ndarray) -> int:
    """Index of the lexicographically smallest (x, y, z) point."""
    n = coords.shape[0]
    order = np.lexsort((np.arange(n), coords[:, 2], coords[:, 1], coords[:, 0]))
    return int(order[0])


def fps(coords: np.ndarray, k: int, seed_index: int, lex_ties: bool = False) -> np.ndarray:
    """Farthest-point sampling indices.

    Each step picks the point maximizing the minimum distance to the
    already-selected set.  Ties go to the lowest index, or with
    ``lex_ties`` to the lexicographically smallest point (making the
    selection a pure set function, independent of input order).
    """
    n = coords.shape[0]
    out = np.empty(k, dtype=np.int64)
    out[0] = seed_index
    mind = _sqdist_to(coords, coords[seed_index])
    for step in range(1, k):
        if lex_ties:
            top = mind.max()
            cand = np.flatnonzero(mind == top)
            sub = coords[cand]
            order = np.lexsort((cand, sub[:, 2], sub[:, 1], sub[:, 0]))
            best = int(cand[order[0]])
        else:
            best = int(np.argmax(mind))
        out[step] = best
        np.minimum(mind, _sqdist_to(coords, coords[best]), out=mind)
    return out


def _ranked_candidates(d: np.ndarray, cand: np.ndarray, coords: np.ndarray) -> np.ndarray:
    sub = coords[cand]
    order = np.lexsort((cand, sub[:, 2], sub[:, 1], sub[:, 0], d[cand]))
    return cand[order]


def ball_query(points: np.ndarray, centers: np.ndarray, radius: float, cap: int) -> np.ndarray:
    """Up to ``cap`` neighbors within ``radius`` of each center.

    Neighbors are ordered by (distance, point, index); short rows are
    padded by repeating the first (nearest) entry.  An empty ball falls
    back to the single nearest point.
    """
    m = centers.shape[0]
    n = points.shape[0]
    out = np.empty((m, cap), dtype=np.int64)
    r2 = radius * radius
    all_idx = np.arange(n)
    for i in range(m):
        d = _sqdist_to(points, centers[i])
        cand = np.flatnonzero(d <= r2)
        if cand.size == 0:
            cand = all_idx
        ranked = _ranked_candidates(d, cand, points)[:cap]
        out[i, : ranked.size] = ranked
        out[i, ranked.size :] = ranked[0]
    return out


def three_nn(queries: np.ndarray, refs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Three nearest reference points per query, with distances.

    Ordered by (distance, point, index); fewer than three references
    pad by repeating the nearest.
    """
    q = queries.shape[0]
    n = refs.shape[0]
    idx = np.empty((q, 3), dtype=np.int64)
    dist = np.empty((q, 3), dtype=np.float64)
    all_idx = np.arange(n)
    for i in range(q):
        d = _sqdist_to(refs, queries[i])
        ranked = _ranked_candidates(d, all_idx, refs)[:3]
        if ranked.size < 3:
            ranked = np.concatenate([ranked, np.full(3 - ranked.size, ranked[0])])
        idx[i] = ranked
        dist[i] = np.sqrt(d[ranked])
    return idx, dist


def scatter_add_rows(out: np.ndarray, idx: np.ndarray, src: np.ndarray) -> None:
    """In place: ``out[idx[m]] += src[m]`` for each row m, in order."""
    np.add.at(out, idx, src)
