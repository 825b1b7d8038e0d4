"""Independent reference computations used by the tests.

Nothing here touches the package's kernels: powers are walked with plain
Python lists, connectivity goes through networkx.
"""

from math import gcd

import networkx as nx


def powers(table, y):
    t = table.tolist() if hasattr(table, "tolist") else table
    out = {0}
    z = y
    while z != 0:
        out.add(z)
        z = t[z][y]
    return out


def naive_power_graph(g) -> nx.Graph:
    n = g.order
    pw = [powers(g.table, y) for y in range(n)]
    G = nx.Graph()
    G.add_nodes_from(range(n))
    for x in range(n):
        for y in range(x + 1, n):
            if x in pw[y] or y in pw[x]:
                G.add_edge(x, y)
    return G


def naive_order(g, x):
    return len(powers(g.table, x))


def phi_by_gcd(m):
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def nx_graph(pg) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(pg.vertex_count))
    G.add_edges_from(pg.edges())
    return G


def nx_kappa(pg) -> int:
    return nx.node_connectivity(nx_graph(pg))
