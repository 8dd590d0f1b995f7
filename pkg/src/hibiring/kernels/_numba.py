"""Numba twins of the numpy kernels; same signatures, same outputs."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def enumerate_box(order, low, high, cov_indptr, cov_idx, n):
    m = order.shape[0]
    cap = 1024
    out = np.empty((cap, n), dtype=np.int64)
    count = 0
    val = np.zeros(n, dtype=np.int64)
    cur = np.zeros(m, dtype=np.int64)
    ub = np.zeros(m, dtype=np.int64)

    e = order[0]
    b = high[e]
    for t in range(cov_indptr[e], cov_indptr[e + 1]):
        c = cov_idx[t]
        if val[c] - 1 < b:
            b = val[c] - 1
    ub[0] = b
    cur[0] = low[e]

    k = 0
    while k >= 0:
        e = order[k]
        v = cur[k]
        if v > ub[k]:
            k -= 1
            if k >= 0:
                cur[k] += 1
            continue
        val[e] = v
        if k == m - 1:
            if count == cap:
                cap *= 2
                bigger = np.empty((cap, n), dtype=np.int64)
                bigger[:count] = out[:count]
                out = bigger
            out[count, :] = val
            count += 1
            cur[k] += 1
        else:
            k += 1
            e2 = order[k]
            b = high[e2]
            for t in range(cov_indptr[e2], cov_indptr[e2 + 1]):
                c = cov_idx[t]
                if val[c] - 1 < b:
                    b = val[c] - 1
            ub[k] = b
            cur[k] = low[e2]
    return out[:count]


@njit(cache=True)
def ud_reached_top(vals, rank, x0, top):
    n_cand, n = vals.shape
    res = np.zeros(n_cand, dtype=np.bool_)
    for c in range(n_cand):
        in_i = np.zeros(n, dtype=np.bool_)
        ucur = np.zeros(n, dtype=np.bool_)
        dcur = np.zeros(n, dtype=np.bool_)
        for y in range(n):
            if rank[x0, y] == vals[c, x0] - vals[c, y]:
                ucur[y] = True
                in_i[y] = True
        reached = ucur[top]
        while not reached:
            found_d = False
            for x in range(n):
                dcur[x] = False
                if not in_i[x]:
                    for y in range(n):
                        if ucur[y] and rank[x, y] > 0:
                            dcur[x] = True
                            found_d = True
                            break
            if not found_d:
                break
            for x in range(n):
                if dcur[x]:
                    in_i[x] = True
            found_u = False
            for y in range(n):
                ucur[y] = False
                if not in_i[y]:
                    for x in range(n):
                        if dcur[x] and rank[x, y] > 0 and rank[x, y] == vals[c, x] - vals[c, y]:
                            ucur[y] = True
                            found_u = True
                            break
            if not found_u:
                break
            for y in range(n):
                if ucur[y]:
                    in_i[y] = True
            reached = ucur[top]
        res[c] = reached
    return res


@njit(cache=True)
def pairwise_minimal(vals, cov_a, cov_b):
    n_cand, n = vals.shape
    n_cov = cov_a.shape[0]
    res = np.ones(n_cand, dtype=np.bool_)
    for i in range(n_cand):
        for j in range(n_cand):
            if j == i:
                continue
            ok = True
            for t in range(n):
                if vals[i, t] - vals[j, t] < 0:
                    ok = False
                    break
            if ok:
                for t in range(n_cov):
                    a = cov_a[t]
                    b = cov_b[t]
                    if vals[i, a] - vals[j, a] < vals[i, b] - vals[j, b]:
                        ok = False
                        break
            if ok:
                res[i] = False
                break
    return res
