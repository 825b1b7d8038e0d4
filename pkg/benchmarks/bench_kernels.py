"""Time the compiled kernels against their pure-numpy/Python twins.

    python3 benchmarks/bench_kernels.py [--max-order 150] [--repeat 3]
"""

import argparse
import time

from powergraph import _accel, kernels
from powergraph.connectivity import vertex_split_network
from powergraph.graph import build_power_graph, min_degree
from powergraph.groups import build_cyclic, build_dicyclic


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def flow_workload(g):
    """All flows vertex_connectivity would run from a min-degree vertex, unpruned."""
    pg = build_power_graph(g)
    net = vertex_split_network(pg)
    _, v = min_degree(pg)
    sinks = [t for t in range(pg.vertex_count) if t != v and not pg.adjacency[v, t]]

    def run(dinic):
        for t in sinks:
            dinic(net.start, net.head, net.cap.copy(), net.rev, 2 * v + 1, 2 * t, pg.vertex_count)

    return run, len(sinks)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=150)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    groups = [build_cyclic(args.max_order), build_dicyclic(args.max_order // 4)]
    warm = build_cyclic(6)
    kernels.membership_numba(warm.table)
    run, _ = flow_workload(warm)
    run(kernels.dinic_numba)

    print(f"{'kernel':<12}{'group':<10}{'n':>5}{'numba s':>12}{'fallback s':>12}{'speedup':>9}")
    for g in groups:
        fast = best_of(lambda: kernels.membership_numba(g.table), args.repeat)
        slow = best_of(lambda: kernels.membership_numpy(g.table), args.repeat)
        print(f"{'membership':<12}{g.label:<10}{g.order:>5}{fast:>12.5f}{slow:>12.5f}{slow / fast:>8.1f}x")
    for g in groups:
        run, flows = flow_workload(g)
        fast = best_of(lambda: run(kernels.dinic_numba), args.repeat)
        slow = best_of(lambda: run(kernels.dinic_python), args.repeat)
        print(f"{'dinic x' + str(flows):<12}{g.label:<10}{g.order:>5}{fast:>12.5f}{slow:>12.5f}{slow / fast:>8.1f}x")


if __name__ == "__main__":
    main()
