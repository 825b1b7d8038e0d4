"""Power graphs and small graph utilities."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .groups import GroupTable


@dataclass(frozen=True, eq=False)
class PowerGraph:
    """Simple undirected graph stored as a read-only boolean adjacency matrix.

    ``labels`` maps vertex ids back to element ids of the originating group
    (identity on a full power graph, shifted by one on the proper power graph).
    """

    adjacency: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        if adj.diagonal().any() or not (adj == adj.T).all():
            raise ValueError("adjacency must be symmetric and irreflexive")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)
        labels = np.arange(adj.shape[0]) if self.labels is None else np.asarray(self.labels).copy()
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    @property
    def vertex_count(self) -> int:
        return self.adjacency.shape[0]

    @cached_property
    def degrees(self) -> np.ndarray:
        d = self.adjacency.sum(axis=1).astype(np.int64)
        d.setflags(write=False)
        return d

    @property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])

    def is_complete(self) -> bool:
        n = self.vertex_count
        return bool((self.degrees == n - 1).all())

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def induced(self, keep) -> "PowerGraph":
        keep = np.asarray(keep)
        if keep.dtype == bool:
            keep = np.flatnonzero(keep)
        return PowerGraph(self.adjacency[np.ix_(keep, keep)], self.labels[keep])


def build_power_graph(g: GroupTable) -> PowerGraph:
    member = g.member
    adj = member | member.T
    np.fill_diagonal(adj, False)
    return PowerGraph(adj)


def proper_power_graph(pg: PowerGraph) -> PowerGraph:
    if pg.vertex_count < 2:
        raise ValueError("proper power graph needs at least 2 vertices")
    return pg.induced(np.arange(1, pg.vertex_count))


def min_degree(pg: PowerGraph) -> tuple[int, int]:
    """(delta, smallest vertex attaining it)."""
    v = int(np.argmin(pg.degrees))
    return int(pg.degrees[v]), v


def connected_components(pg: PowerGraph, removed=()) -> list[list[int]]:
    """Components by BFS in ascending vertex order, skipping ``removed`` vertices."""
    n = pg.vertex_count
    seen = np.zeros(n, dtype=bool)
    seen[list(removed)] = True
    comps = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in np.flatnonzero(pg.adjacency[u] & ~seen):
                seen[w] = True
                comp.append(int(w))
                queue.append(int(w))
        comps.append(sorted(comp))
    return comps


def is_connected(pg: PowerGraph, removed=()) -> bool:
    return len(connected_components(pg, removed)) <= 1


def diameter_at_most_two(pg: PowerGraph) -> bool:
    a = pg.adjacency.astype(np.int64)
    reach = a + a @ a + np.eye(pg.vertex_count, dtype=np.int64)
    return bool((reach > 0).all())


def dump_edge_list(pg: PowerGraph) -> str:
    edges = pg.edges()
    lines = [f"{pg.vertex_count} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def load_edge_list(text: str) -> PowerGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n, m = map(int, lines[0].split())
    adj = np.zeros((n, n), dtype=bool)
    for ln in lines[1 : 1 + m]:
        u, v = map(int, ln.split())
        adj[u, v] = adj[v, u] = True
    return PowerGraph(adj)
