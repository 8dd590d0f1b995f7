"""Pure-numpy kernels: vectorized across candidates, no JIT."""

from __future__ import annotations

import numpy as np

_BLOCK = 2048


def enumerate_box(order, low, high, cov_indptr, cov_idx, n):
    """All strictly order-reversing integer vectors within the search box.

    Breadth-wise frontier expansion: elements are assigned in ``order`` (a
    linear extension), each partial row spawning one child per admissible
    value.  Row order equals ascending lexicographic order of the value
    vector along ``order``, matching the depth-first kernel.
    """
    rows = np.zeros((1, n), dtype=np.int64)
    for e in order:
        ub = np.full(len(rows), high[e], dtype=np.int64)
        for t in range(cov_indptr[e], cov_indptr[e + 1]):
            np.minimum(ub, rows[:, cov_idx[t]] - 1, out=ub)
        counts = ub - low[e] + 1
        np.clip(counts, 0, None, out=counts)
        keep = counts > 0
        counts = counts[keep]
        rows = np.repeat(rows[keep], counts, axis=0)
        if not len(rows):
            return rows
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        rows[:, e] = low[e] + np.arange(len(rows)) - starts
    return rows


def ud_reached_top(vals, rank, x0, top):
    """For each candidate row, run the alternating up/down closure.

    A candidate is accepted when the closure reaches the top element; the
    up-steps follow rank-tight pairs (rank[x,y] == v[x] - v[y]), the
    down-steps sweep everything below the newest up-layer.
    """
    n_cand = len(vals)
    res = np.zeros(n_cand, dtype=bool)
    lt = rank > 0
    for s in range(0, n_cand, _BLOCK):
        blk = vals[s : s + _BLOCK]
        b = len(blk)
        diff = blk[:, :, None] - blk[:, None, :]
        tight = lt[None, :, :] & (diff == rank[None, :, :])
        in_i = diff[:, x0, :] == rank[x0][None, :]
        ucur = in_i.copy()
        reached = ucur[:, top].copy()
        active = ~reached
        while active.any():
            dcur = active[:, None] & ~in_i & (lt[None] & ucur[:, None, :]).any(axis=2)
            in_i |= dcur
            active &= dcur.any(axis=1)
            unext = active[:, None] & ~in_i & (tight & dcur[:, :, None]).any(axis=1)
            in_i |= unext
            reached |= unext[:, top]
            active &= unext.any(axis=1) & ~reached
            ucur = unext
        res[s : s + _BLOCK] = reached
    return res


def pairwise_minimal(vals, cov_a, cov_b):
    """Minimality by pairwise comparison: no other row is componentwise
    below with an order-reversing difference."""
    n_cand = len(vals)
    res = np.ones(n_cand, dtype=bool)
    for i in range(n_cand):
        diff = vals[i][None, :] - vals
        dominated = (diff >= 0).all(axis=1)
        dominated &= (diff[:, cov_a] >= diff[:, cov_b]).all(axis=1)
        dominated[i] = False
        if dominated.any():
            res[i] = False
    return res
