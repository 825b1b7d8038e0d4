"""Census of catalog nilpotent groups: enumeration, analysis, full verification."""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .connectivity import (
    brute_force_vertex_connectivity,
    connectivity_report,
    is_vertex_cut,
    vertex_connectivity,
)
from .graph import connected_components, diameter_at_most_two, proper_power_graph
from .groups import (
    KINDS,
    GroupTable,
    NilpotentSpec,
    PGroupSpec,
    build_dicyclic,
    check_group_axioms,
    direct_product,
    is_nilpotent,
    maximal_cyclic_generators,
    parse_descriptor,
)
from .numtheory import primes_up_to, prime_power
from .theorems import (
    NotApplicable,
    cyclic_equality_predicate,
    degree_lower_bound,
    degree_via_formula,
    delta_witness_r2,
    is_generalized_quaternion,
    kappa_formula_check,
    min_degree_sylow_witness,
    necessary_condition_check,
    ordering_checks_r2,
    p_group_equality_predicate,
    power_graph_of,
    sets_A_equals_B,
    strict_delta_bound_check,
    sylow_data,
    theorem_predicate,
    theorem_verdict,
)

log = logging.getLogger(__name__)

KAPPA_BUDGET = 400
CSV_COLUMNS = ("label", "order", "kappa", "kappa_prime", "delta", "clause", "agreement")
DICYCLIC_FAMILY = range(2, 17)


@dataclass(frozen=True)
class CensusConfig:
    max_order: int = 150
    kinds: tuple[str, ...] = KINDS
    oracle_cap: int = 14
    output_format: str = "json"
    cache_path: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.max_order < 2:
            raise ValueError("max_order must be >= 2")
        if not 0 <= self.oracle_cap <= 14:
            raise ValueError("oracle_cap must be in 0..14")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"unknown format {self.output_format!r}")
        bad = set(self.kinds) - set(KINDS)
        if bad:
            raise ValueError(f"unknown kinds {sorted(bad)}")


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _partitions(k: int, largest: int | None = None):
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def catalog_p_groups(p: int, max_order: int, kinds=KINDS) -> list[PGroupSpec]:
    """Pairwise non-isomorphic catalog groups of order p^k <= max_order."""
    out: dict[str, PGroupSpec] = {}
    k = 1
    while p**k <= max_order:
        cands = []
        if "cyclic" in kinds:
            cands.append(PGroupSpec(p, "cyclic", k))
        if "abelian" in kinds:
            cands += [PGroupSpec(p, "abelian", k, parts) for parts in _partitions(k) if len(parts) > 1]
        if "elementary" in kinds and k > 1:
            cands.append(PGroupSpec(p, "elementary", k))
        if p == 2 and k >= 3:
            for kind in ("dihedral", "dicyclic"):
                if kind in kinds:
                    cands.append(PGroupSpec(p, kind, k))
        if p == 2 and k >= 4 and "semidihedral" in kinds:
            cands.append(PGroupSpec(p, "semidihedral", k))
        if "modular" in kinds and k >= (4 if p == 2 else 3):
            cands.append(PGroupSpec(p, "modular", k))
        if "heisenberg" in kinds and p > 2 and k == 3:
            cands.append(PGroupSpec(p, "heisenberg", k))
        for c in cands:
            c = c.canonical()
            out.setdefault(c.descriptor, c)
        k += 1
    return sorted(out.values(), key=lambda s: (s.order, s.label))


def enumerate_census(config: CensusConfig) -> list[NilpotentSpec]:
    primes = primes_up_to(config.max_order)
    per_prime = {p: catalog_p_groups(p, config.max_order, config.kinds) for p in primes}
    found: list[NilpotentSpec] = []

    def extend(i: int, order: int, chosen: tuple[PGroupSpec, ...]):
        if i == len(primes) or primes[i] * order > config.max_order:
            if chosen:
                found.append(NilpotentSpec(chosen))
            return
        extend(i + 1, order, chosen)
        for f in per_prime[primes[i]]:
            if order * f.order <= config.max_order:
                extend(i + 1, order * f.order, chosen + (f,))

    extend(0, 1, ())
    found.sort(key=lambda s: (s.order, s.label))
    labels = [s.label for s in found]
    assert len(labels) == len(set(labels)), "duplicate census labels"
    return found


# ---------------------------------------------------------------------------
# single-group analysis
# ---------------------------------------------------------------------------


def analyze_group(g: GroupTable, spec: NilpotentSpec | None = None, budget: int = KAPPA_BUDGET) -> dict:
    rec: dict = {"label": g.label, "order": g.order}
    if spec is not None:
        rec["descriptor"] = spec.descriptor
    if g.order > budget:
        rec["skipped"] = "budget"
        return rec
    if g.order < 2:
        rec["skipped"] = "trivial group"
        return rec
    pg = power_graph_of(g)
    rep = connectivity_report(pg)
    nilpotent = spec is not None or is_nilpotent(g)
    clause = theorem_predicate(spec, g) if nilpotent else "n/a"
    rec.update(
        kappa=rep.kappa,
        kappa_prime=rep.kappa_prime,
        delta=rep.delta,
        min_degree_witness=rep.min_degree_witness,
        min_degree_witness_order=int(g.element_orders[rep.min_degree_witness]),
        vertex_cut=list(rep.vertex_cut_witness) if rep.vertex_cut_witness is not None else None,
        maximal_cyclic_orders=sorted(int(g.element_orders[y]) for y in maximal_cyclic_generators(g)),
        nilpotent=nilpotent,
        clause=clause,
        equality=rep.kappa == rep.delta,
        agreement=(rep.kappa == rep.delta) == (clause != "none") if nilpotent else None,
    )
    return rec


def analyze(spec: NilpotentSpec, budget: int = KAPPA_BUDGET) -> dict:
    if spec.order > budget:
        return {"label": spec.label, "order": spec.order, "descriptor": spec.descriptor, "skipped": "budget"}
    return analyze_group(direct_product(spec), spec, budget)


def _analyze_descriptor(desc: str) -> dict:
    return analyze(parse_descriptor(desc))


def _cache_key(label: str) -> str:
    return json.dumps([label, __version__])


def load_cache(path) -> dict[str, dict]:
    out = {}
    p = Path(path)
    if p.exists():
        for line in p.read_text().splitlines():
            if line.strip():
                entry = json.loads(line)
                out[json.dumps(entry["key"])] = entry["record"]
    return out


def run_census(config: CensusConfig) -> list[dict]:
    specs = enumerate_census(config)
    cache = load_cache(config.cache_path) if config.cache_path else {}
    todo = [s for s in specs if _cache_key(s.label) not in cache]
    fresh = _map(_analyze_descriptor, [s.descriptor for s in todo], config.jobs)
    if config.cache_path and fresh:
        with open(config.cache_path, "a") as fh:
            for s, rec in zip(todo, fresh):
                fh.write(json.dumps({"key": [s.label, __version__], "record": rec}) + "\n")
    new = {_cache_key(s.label): r for s, r in zip(todo, fresh)}
    return [cache.get(_cache_key(s.label)) or new[_cache_key(s.label)] for s in specs]


def format_records(records: list[dict], fmt: str = "json") -> str:
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in records)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(["" if r.get(c) is None else r.get(c) for c in CSV_COLUMNS])
    return buf.getvalue()


def _map(fn, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=1))


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


class Tally:
    """Per-check counters: how many cases were examined and which failed."""

    def __init__(self):
        self.checked: dict[str, int] = defaultdict(int)
        self.failures: dict[str, list[str]] = defaultdict(list)

    def record(self, name: str, ok: bool, where: str):
        self.checked[name] += 1
        if not ok:
            self.failures[name].append(where)

    def merge(self, other: "Tally"):
        for k, v in other.checked.items():
            self.checked[k] += v
        for k, v in other.failures.items():
            self.failures[k].extend(v)

    @property
    def failed(self) -> int:
        return sum(len(v) for v in self.failures.values())

    def summary(self) -> dict:
        return {
            k: {"checked": self.checked[k], "failed": len(self.failures.get(k, []))}
            for k in sorted(self.checked)
        }


def _maximal_within(g, mask) -> set[int]:
    return set(maximal_cyclic_generators(g, mask))


def verify_group(spec: NilpotentSpec, oracle_cap: int = 14, predicate=theorem_predicate) -> Tally:
    """Run every structural, graph and theorem check on one census group."""
    t = Tally()
    label = spec.label
    g = direct_product(spec)
    n = g.order
    if n > KAPPA_BUDGET:
        t.record("skipped_budget", True, label)
        return t
    ords = g.element_orders
    member = g.member

    # group kernel
    try:
        check_group_axioms(g.table)
        t.record("group_axioms", True, label)
    except ValueError as exc:
        t.record("group_axioms", False, f"{label}: {exc}")
    sizes = member.sum(axis=1)
    t.record("lagrange", bool((n % ords == 0).all() and (sizes == ords).all()), label)
    t.record("nilpotent", is_nilpotent(g), label)

    sd = sylow_data(spec, g)
    r = len(sd.primes)
    radix = np.cumprod([1] + [f.order for f in spec.factors[:-1]])
    sizes_f = np.array([f.order for f in spec.factors])
    digits = (np.arange(n)[:, None] // radix[None, :]) % sizes_f[None, :]
    comps = sd.components
    ok = bool((comps == digits * radix[None, :]).all())
    for x in range(n):
        acc = 0
        for c in comps[x]:
            acc = int(g.table[acc, c])
        prod_ord = int(np.prod([ords[c] for c in comps[x]]))
        ok &= acc == x and prod_ord == ords[x] and ((sd.support[x] == 0) == (x == 0))
        for i in range(r):
            for j in range(i + 1, r):
                a, b = comps[x, i], comps[x, j]
                ok &= g.table[a, b] == g.table[b, a]
    t.record("components", bool(ok), label)

    gens = maximal_cyclic_generators(g)
    sets = [member[y] for y in gens]
    union = np.logical_or.reduce(sets)
    incomparable = all(
        not (sets[i] <= sets[j]).all() for i in range(len(sets)) for j in range(len(sets)) if i != j
    )
    t.record("maximal_cyclic_cover", bool(union.all()) and incomparable, label)
    local_max = [_maximal_within(g, m) for m in sd.masks]
    local_min = [min(int(ords[y]) for y in lm) for lm in local_max]
    gen_reps = set(gens)
    min_gen_order = int(ords[gens[0]])
    ok_max = ok_min = True
    for x in range(1, n):
        comp_max = all(int(g.cyclic_rep[comps[x, i]]) in local_max[i] for i in range(r))
        ok_max &= (int(g.cyclic_rep[x]) in gen_reps) == comp_max
        is_min = int(g.cyclic_rep[x]) in gen_reps and ords[x] == min_gen_order
        comp_min = comp_max and all(int(ords[comps[x, i]]) == local_min[i] for i in range(r))
        ok_min &= is_min == comp_min
    t.record("maximal_iff_components_maximal", ok_max, label)
    t.record("minimum_maximal_iff_components", ok_min, label)

    # power graph
    pg = power_graph_of(g)
    deg = pg.degrees
    t.record("identity_universal", bool(deg[0] == n - 1), label)
    t.record("diameter_two", diameter_at_most_two(pg) and len(connected_components(pg)) == 1, label)
    t.record("equal_subgroup_equal_degree", bool((deg == deg[g.cyclic_rep]).all()), label)
    t.record("maximal_degree_is_order_minus_one", all(deg[y] == ords[y] - 1 for y in gens), label)

    # connectivity
    rep = connectivity_report(pg)
    t.record("kappa_le_kappa_prime_le_delta", rep.kappa <= rep.kappa_prime <= rep.delta, label)
    t.record("kappa_prime_eq_delta", rep.kappa_prime == rep.delta, label)
    if rep.vertex_cut_witness is None:
        t.record("cut_witness", pg.is_complete() and rep.kappa == n - 1, label)
    else:
        w = rep.vertex_cut_witness
        t.record("cut_witness", len(w) == rep.kappa and is_vertex_cut(pg, w), label)
    if n <= oracle_cap:
        t.record("oracle_kappa", brute_force_vertex_connectivity(pg) == rep.kappa, label)

    # degree formula, lower bound, Lemma A_x = B_x
    ok_f = ok_b = ok_ab = True
    bad = []
    for x in range(1, n):
        ok_f &= degree_via_formula(spec, g, x).value == deg[x]
        ok_ab &= sets_A_equals_B(spec, g, x)
        for y in gens:
            if member[y, x]:
                bound, pred = degree_lower_bound(spec, g, x, y)
                good = bound <= deg[x] and (bound == deg[x]) == pred
                if not good:
                    bad.append((x, y))
                ok_b &= good
    t.record("degree_formula", ok_f, label)
    t.record("degree_lower_bound", ok_b, f"{label} {bad[:3]}")
    t.record("lemma_A_equals_B", ok_ab, label)

    for k in range(r):
        w = min_degree_sylow_witness(spec, g, k)
        t.record("sylow_min_degree_witness", bool((deg[w] <= deg[sd.masks[k]]).all()), f"{label} k={k}")

    try:
        t.record("strict_delta_bound", strict_delta_bound_check(spec, g), label)
    except NotApplicable:
        pass
    try:
        y1 = delta_witness_r2(spec, g)
        t.record("delta_witness_r2", int(deg[y1]) == rep.delta, label)
        for oc in ordering_checks_r2(spec, g):
            t.record(
                "ordering_r2",
                oc.below_second and oc.above_first and oc.full_support_above_first,
                f"{label} y={oc.generator}",
            )
    except NotApplicable:
        pass

    equal = rep.kappa == rep.delta
    if prime_power(n):
        t.record("p_group_criterion", p_group_equality_predicate(g) == equal, label)
        proper_conn = len(connected_components(proper_power_graph(pg))) == 1
        t.record("proper_power_graph", proper_conn == (g.is_cyclic or is_generalized_quaternion(g)), label)
    if g.is_cyclic:
        t.record("cyclic_criterion", cyclic_equality_predicate(n) == equal, label)
    try:
        t.record("kappa_formula", kappa_formula_check(spec, g, rep.kappa), label)
    except NotApplicable:
        pass
    try:
        t.record("necessary_condition", necessary_condition_check(g, rep), label)
    except NotApplicable:
        pass
    verdict = theorem_verdict(spec, g, rep.kappa, predicate)
    t.record("theorem", verdict.agreement, f"{label} kappa={verdict.kappa} delta={verdict.delta} clause={verdict.clause}")
    return t


def _verify_descriptor(args) -> Tally:
    desc, oracle_cap, predicate = args
    return verify_group(parse_descriptor(desc), oracle_cap, predicate)


def verify_dicyclic_family(ms=DICYCLIC_FAMILY) -> Tally:
    """kappa < delta on P(Q_4m), nilpotent or not."""
    t = Tally()
    for m in ms:
        g = build_dicyclic(m)
        pg = power_graph_of(g)
        rep = connectivity_report(pg)
        t.record("dicyclic_kappa_lt_delta", rep.kappa < rep.delta, g.label)
        t.record("kappa_le_kappa_prime_le_delta", rep.kappa <= rep.kappa_prime <= rep.delta, g.label)
        t.record("kappa_prime_eq_delta", rep.kappa_prime == rep.delta, g.label)
    return t


@dataclass
class VerifyResult:
    tally: Tally
    groups: int
    labels: list[str] = field(default_factory=list)

    @property
    def status(self) -> int:
        return 0 if self.tally.failed == 0 else 1


def verify_all(config: CensusConfig, predicate=theorem_predicate, families: bool = True) -> VerifyResult:
    specs = enumerate_census(config)
    args = [(s.descriptor, config.oracle_cap, predicate) for s in specs]
    tallies = _map(_verify_descriptor, args, config.jobs)
    total = Tally()
    for tl in tallies:
        total.merge(tl)
    if families:
        total.merge(verify_dicyclic_family())
    return VerifyResult(total, len(specs), [s.label for s in specs])


def cyclic_slice(max_n: int, oracle_cap: int = 14) -> Tally:
    """Cyclic criterion over Z_n for 2 <= n <= max_n, with the subset oracle for small n."""
    from .groups import build_cyclic

    t = Tally()
    for n in range(2, max_n + 1):
        g = build_cyclic(n)
        pg = power_graph_of(g)
        kappa, _ = vertex_connectivity(pg)
        delta = int(pg.degrees.min())
        t.record("cyclic_criterion", (kappa == delta) == cyclic_equality_predicate(n), g.label)
        if n <= oracle_cap:
            t.record("oracle_kappa", brute_force_vertex_connectivity(pg) == kappa, g.label)
    return t
