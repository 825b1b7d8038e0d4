"""Vertex and edge connectivity by max-flow, plus a brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import kernels
from .graph import PowerGraph, connected_components, min_degree

BRUTE_FORCE_CAP = 14


@dataclass(frozen=True)
class FlowNetwork:
    """Directed network in CSR form; ``rev[e]`` is the residual partner of arc e."""

    start: np.ndarray
    head: np.ndarray
    cap: np.ndarray
    rev: np.ndarray

    @property
    def node_count(self) -> int:
        return self.start.shape[0] - 1

    @classmethod
    def from_arcs(cls, n, tails, heads, caps, paired_caps=None) -> "FlowNetwork":
        """Arc i runs tails[i] -> heads[i]; its partner gets ``paired_caps[i]`` (default 0)."""
        tails = np.asarray(tails, dtype=np.int64)
        heads = np.asarray(heads, dtype=np.int64)
        caps = np.asarray(caps, dtype=np.int64)
        m = tails.shape[0]
        back = np.zeros(m, dtype=np.int64) if paired_caps is None else np.asarray(paired_caps, dtype=np.int64)
        all_t = np.concatenate([tails, heads])
        all_h = np.concatenate([heads, tails])
        all_c = np.concatenate([caps, back])
        all_r = np.concatenate([np.arange(m, 2 * m), np.arange(m)])
        order = np.argsort(all_t, kind="stable")
        pos = np.empty_like(order)
        pos[order] = np.arange(2 * m)
        start = np.searchsorted(all_t[order], np.arange(n + 1)).astype(np.int64)
        return cls(start, all_h[order], all_c[order], pos[all_r[order]])

    def max_flow(self, s: int, t: int, limit: int | None = None):
        """Return (flow value, residual-reachable node mask from s)."""
        if s == t:
            raise ValueError("source and sink must differ")
        if limit is None:
            limit = int(self.cap.sum()) + 1
        cap = self.cap.copy()
        flow = kernels.dinic(self.start, self.head, cap, self.rev, s, t, limit)
        return int(flow), kernels.residual_reach(self.start, self.head, cap, s)


def max_flow_unit(net: FlowNetwork, source: int, sink: int, limit: int | None = None) -> int:
    return net.max_flow(source, sink, limit)[0]


def vertex_split_network(pg: PowerGraph) -> FlowNetwork:
    """Node 2v is v_in, 2v+1 is v_out; v_in -> v_out has capacity 1."""
    n = pg.vertex_count
    us, ws = np.nonzero(pg.adjacency)
    v = np.arange(n)
    tails = np.concatenate([2 * v, 2 * us + 1])
    heads = np.concatenate([2 * v + 1, 2 * ws])
    caps = np.concatenate([np.ones(n, dtype=np.int64), np.full(us.shape[0], n, dtype=np.int64)])
    return FlowNetwork.from_arcs(2 * n, tails, heads, caps)


def edge_network(pg: PowerGraph) -> FlowNetwork:
    us, ws = np.nonzero(np.triu(pg.adjacency, 1))
    ones = np.ones(us.shape[0], dtype=np.int64)
    return FlowNetwork.from_arcs(pg.vertex_count, us, ws, ones, ones)


def local_vertex_connectivity(pg: PowerGraph, s: int, t: int, net: FlowNetwork | None = None, limit=None):
    """Max number of internally disjoint s-t paths (s, t nonadjacent) and a min separator."""
    if s == t or pg.adjacency[s, t]:
        raise ValueError(f"vertices {s} and {t} must be distinct and nonadjacent")
    net = net or vertex_split_network(pg)
    flow, reach = net.max_flow(2 * s + 1, 2 * t, limit)
    cut = np.flatnonzero(reach[0::2] & ~reach[1::2])
    return flow, tuple(int(c) for c in cut if c != s)


def vertex_connectivity(pg: PowerGraph) -> tuple[int, tuple[int, ...] | None]:
    """Exact kappa and a minimum vertex cut (None for complete graphs).

    Fix a minimum-degree vertex v. Any minimum cut either misses v, and then
    separates v from some non-neighbour t, or contains v, and then separates
    two non-adjacent neighbours of v. Flows are capped at the best cut so far.
    """
    n = pg.vertex_count
    if n < 2:
        raise ValueError("vertex connectivity needs at least 2 vertices")
    if pg.is_complete():
        return n - 1, None
    delta, v = min_degree(pg)
    best, witness = delta, tuple(int(u) for u in pg.neighbors(v))
    adj = pg.adjacency
    a = adj.astype(np.int32)
    common = a @ a
    net = vertex_split_network(pg)

    def attempt(s, t):
        nonlocal best, witness
        if best == 0 or common[s, t] >= best:
            return
        flow, cut = local_vertex_connectivity(pg, s, t, net, best)
        if flow < best:
            best, witness = flow, cut

    for t in range(n):
        if t != v and not adj[v, t]:
            attempt(v, t)
    nbrs = pg.neighbors(v)
    for i, x in enumerate(nbrs):
        for y in nbrs[i + 1 :]:
            if not adj[x, y]:
                attempt(int(x), int(y))
    return best, witness


def edge_connectivity(pg: PowerGraph) -> int:
    n = pg.vertex_count
    if n < 2:
        raise ValueError("edge connectivity needs at least 2 vertices")
    net = edge_network(pg)
    best = min_degree(pg)[0]
    for t in range(1, n):
        if best == 0:
            break
        best = min(best, net.max_flow(0, t, best)[0])
    return best


def is_vertex_cut(pg: PowerGraph, cut) -> bool:
    cut = set(int(c) for c in cut)
    if pg.vertex_count - len(cut) < 2:
        return False
    return len(connected_components(pg, removed=cut)) > 1


def brute_force_vertex_connectivity(pg: PowerGraph) -> int:
    """Smallest k such that deleting some k vertices disconnects the rest."""
    n = pg.vertex_count
    if n > BRUTE_FORCE_CAP:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_CAP} vertices, got {n}")
    if n <= 1:
        return 0
    nbr = [sum(1 << j for j in range(n) if pg.adjacency[i, j]) for i in range(n)]
    full = (1 << n) - 1

    def connected(alive: int) -> bool:
        root = alive & -alive
        seen = frontier = root
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = nbr[low.bit_length() - 1] & alive & ~seen
            seen |= new
            frontier |= new
        return seen == alive

    for k in range(n - 1):
        for removed in combinations(range(n), k):
            alive = full
            for r in removed:
                alive &= ~(1 << r)
            if not connected(alive):
                return k
    return n - 1


@dataclass(frozen=True)
class ConnectivityReport:
    kappa: int
    kappa_prime: int
    delta: int
    vertex_cut_witness: tuple[int, ...] | None
    min_degree_witness: int


def connectivity_report(pg: PowerGraph) -> ConnectivityReport:
    kappa, cut = vertex_connectivity(pg)
    delta, w = min_degree(pg)
    return ConnectivityReport(kappa, edge_connectivity(pg), delta, cut, w)
