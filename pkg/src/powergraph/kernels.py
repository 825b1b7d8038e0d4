"""Hot numeric kernels.

Each kernel has a numba-compiled version and a fallback; ``_accel.pick``
chooses between them according to ``POWERGRAPH_NUMBA``. Both versions are
importable directly so tests and benchmarks can compare them.
"""

import numpy as np

from ._accel import njit, pick

# ---------------------------------------------------------------------------
# cyclic-subgroup membership
# ---------------------------------------------------------------------------


def _membership_loop(table):
    """member[y, z] is True iff z is a power of y; also returns element orders."""
    n = table.shape[0]
    member = np.zeros((n, n), dtype=np.bool_)
    orders = np.zeros(n, dtype=np.int64)
    for y in range(n):
        z = y
        k = 1
        while z != 0:
            member[y, z] = True
            z = table[z, y]
            k += 1
        member[y, 0] = True
        orders[y] = k
    return member, orders


membership_numba = njit(_membership_loop)


def membership_numpy(table):
    table = np.asarray(table)
    n = table.shape[0]
    ids = np.arange(n)
    member = np.zeros((n, n), dtype=np.bool_)
    orders = np.zeros(n, dtype=np.int64)
    member[:, 0] = True
    orders[0] = 1
    cur = ids.copy()
    live = ids != 0
    k = 1
    while live.any():
        rows = ids[live]
        member[rows, cur[live]] = True
        cur[live] = table[cur[live], rows]
        k += 1
        done = live & (cur == 0)
        orders[done] = k
        live &= ~done
    return member, orders


def membership(table):
    table = np.ascontiguousarray(table, dtype=np.int64)
    return pick(membership_numba, membership_numpy)(table)


# ---------------------------------------------------------------------------
# max-flow (Dinic: BFS level graph + blocking flow by current-arc DFS)
# ---------------------------------------------------------------------------


def _dinic(start, head, cap, rev, s, t, limit):
    """Push flow from s to t in-place on ``cap``; stop once ``limit`` is reached.

    Arcs of node u are ``start[u]:start[u+1]``; ``rev[e]`` is the paired
    residual arc, so the tail of e is ``head[rev[e]]``.
    """
    nn = start.shape[0] - 1
    level = np.empty(nn, dtype=np.int64)
    it = np.empty(nn, dtype=np.int64)
    queue = np.empty(nn, dtype=np.int64)
    path = np.empty(nn, dtype=np.int64)
    flow = 0
    while flow < limit:
        level[:] = -1
        level[s] = 0
        queue[0] = s
        qh = 0
        qt = 1
        while qh < qt:
            u = queue[qh]
            qh += 1
            for e in range(start[u], start[u + 1]):
                v = head[e]
                if cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[qt] = v
                    qt += 1
        if level[t] < 0:
            break
        for u in range(nn):
            it[u] = start[u]
        while flow < limit:
            depth = 0
            u = s
            found = False
            while True:
                if u == t:
                    found = True
                    break
                advanced = False
                while it[u] < start[u + 1]:
                    e = it[u]
                    v = head[e]
                    if cap[e] > 0 and level[v] == level[u] + 1:
                        path[depth] = e
                        depth += 1
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if depth == 0:
                        break
                    depth -= 1
                    u = head[rev[path[depth]]]
                    it[u] += 1
            if not found:
                break
            push = limit - flow
            for i in range(depth):
                if cap[path[i]] < push:
                    push = cap[path[i]]
            for i in range(depth):
                e = path[i]
                cap[e] -= push
                cap[rev[e]] += push
            flow += push
    return flow


def _residual_reach(start, head, cap, s):
    nn = start.shape[0] - 1
    seen = np.zeros(nn, dtype=np.bool_)
    queue = np.empty(nn, dtype=np.int64)
    seen[s] = True
    queue[0] = s
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for e in range(start[u], start[u + 1]):
            v = head[e]
            if cap[e] > 0 and not seen[v]:
                seen[v] = True
                queue[qt] = v
                qt += 1
    return seen


dinic_numba = njit(_dinic)
dinic_python = _dinic
residual_reach_numba = njit(_residual_reach)


def dinic(start, head, cap, rev, s, t, limit):
    return pick(dinic_numba, dinic_python)(start, head, cap, rev, s, t, limit)


def residual_reach(start, head, cap, s):
    return pick(residual_reach_numba, _residual_reach)(start, head, cap, s)
