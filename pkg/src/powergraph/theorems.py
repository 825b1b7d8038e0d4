"""Degree formulas, bounds and equality criteria for power graphs of nilpotent groups.

Functions take ``(spec, g, ...)``. ``spec`` may be None for groups that did not
come from a NilpotentSpec (e.g. imported tables); Sylow data is always read off
the group itself and only cross-checked against ``spec``.

Prime indices ``k`` are 0-based positions in the increasing list of primes
dividing ``|G|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .connectivity import ConnectivityReport, vertex_connectivity
from .graph import PowerGraph, build_power_graph, min_degree
from .groups import (
    GroupTable,
    NilpotentSpec,
    all_components,
    maximal_cyclic_generators,
    sylow_mask,
    sylow_primes,
)
from .numtheory import euler_phi, p_part, prime_power


class NotApplicable(ValueError):
    """Hypotheses of a conditional statement are not met by the given input."""


@dataclass(frozen=True, eq=False)
class SylowData:
    primes: tuple[int, ...]
    alphas: tuple[int, ...]
    masks: tuple[np.ndarray, ...]
    components: np.ndarray  # components[x, i] = i-th Sylow component of x
    support: np.ndarray  # bitmask of nonidentity components


@lru_cache(maxsize=64)
def sylow_data(spec: NilpotentSpec | None, g: GroupTable) -> SylowData:
    primes, alphas = sylow_primes(spec, g)
    comps = all_components(spec, g)
    weights = 1 << np.arange(len(primes), dtype=np.int64)
    support = ((comps != 0) * weights).sum(axis=1) if primes else np.zeros(g.order, dtype=np.int64)
    masks = tuple(sylow_mask(g, p) for p in primes)
    return SylowData(primes, alphas, masks, comps, support)


@lru_cache(maxsize=64)
def power_graph_of(g: GroupTable) -> PowerGraph:
    return build_power_graph(g)


def degree(g: GroupTable, x: int) -> int:
    return int(power_graph_of(g).degrees[x])


def _support_set(bits: int) -> frozenset[int]:
    return frozenset(i for i in range(bits.bit_length()) if bits >> i & 1)


def _sub_mask(sd: SylowData, bits: int) -> np.ndarray:
    """Mask of the subgroup product of P_i over i in ``bits``."""
    return (sd.support & ~bits) == 0


@lru_cache(maxsize=4096)
def _maximal_for_bits(spec, g: GroupTable, bits: int) -> tuple[int, ...]:
    """Maximal cyclic generators of the product of P_i over i in ``bits``."""
    return tuple(maximal_cyclic_generators(g, _sub_mask(sylow_data(spec, g), bits)))


def _all_bits(sd: SylowData) -> int:
    return (1 << len(sd.primes)) - 1


def _require_nonidentity(x: int):
    if x == 0:
        raise ValueError("formula applies to nonidentity elements only")


def _exps(m: int, primes) -> tuple[int, ...]:
    out = []
    for p in primes:
        q, e = p_part(m, p), 0
        while q > 1:
            q //= p
            e += 1
        out.append(e)
    return tuple(out)


# ---------------------------------------------------------------------------
# neighbourhood sets and the degree formula
# ---------------------------------------------------------------------------


def sets_A_B(spec, g: GroupTable, x: int) -> tuple[frozenset[int], frozenset[int]]:
    """(A_x, B_x): y whose tau_x-part generates a group containing x, and y with x in <y>."""
    _require_nonidentity(x)
    sd = sylow_data(spec, g)
    tau = [i for i in range(len(sd.primes)) if sd.support[x] >> i & 1]
    member = g.member
    a, b = set(), set()
    for y in range(g.order):
        if y == x:
            continue
        z = 0
        for i in tau:
            z = int(g.table[z, sd.components[y, i]])
        if member[z, x]:
            a.add(y)
        if member[y, x]:
            b.add(y)
    return frozenset(a), frozenset(b)


def sets_A_equals_B(spec, g: GroupTable, x: int) -> bool:
    a, b = sets_A_B(spec, g, x)
    return a == b


@dataclass(frozen=True)
class DegreeBreakdown:
    """Terms of deg(x) = o(x) - phi(o(x)) + cofactor * generator_count - 1.

    ``maximal_orders`` and ``component_orders`` are exponent tuples over all
    primes of |G| (gamma_i for the first maximal cyclic subgroup containing x,
    beta_i for o(x)).
    """

    element_order: int
    phi_order: int
    support: frozenset[int]
    cofactor: int
    generator_count: int
    maximal_orders: tuple[int, ...]
    component_orders: tuple[int, ...]
    value: int


def containing_maximal_generators(g: GroupTable, x: int, within=None) -> list[int]:
    return [y for y in maximal_cyclic_generators(g, within) if g.member[y, x]]


def degree_via_formula(spec, g: GroupTable, x: int) -> DegreeBreakdown:
    _require_nonidentity(x)
    sd = sylow_data(spec, g)
    bits = int(sd.support[x])
    tau = _support_set(bits)
    o = int(g.element_orders[x])
    cofactor = 1
    for i, (p, a) in enumerate(zip(sd.primes, sd.alphas)):
        if i not in tau:
            cofactor *= p**a
    h = _sub_mask(sd, bits)
    gen_count = int(g.member[h, x].sum())
    m = next(y for y in _maximal_for_bits(spec, g, _all_bits(sd)) if g.member[y, x])
    value = o - euler_phi(o) + cofactor * gen_count - 1
    return DegreeBreakdown(
        element_order=o,
        phi_order=euler_phi(o),
        support=tau,
        cofactor=cofactor,
        generator_count=gen_count,
        maximal_orders=_exps(int(g.element_orders[m]), sd.primes),
        component_orders=_exps(o, sd.primes),
        value=value,
    )


def _as_generator(g: GroupTable, subgroup) -> int:
    """Generator of a cyclic subgroup given as an element collection or id."""
    if isinstance(subgroup, (int, np.integer)):
        return int(g.cyclic_rep[subgroup])
    elems = sorted(int(e) for e in subgroup)
    size = len(elems)
    for e in elems:
        if g.element_orders[e] == size:
            if set(np.flatnonzero(g.member[e]).tolist()) != set(elems):
                break
            return int(g.cyclic_rep[e])
    raise ValueError("subgroup is not cyclic")


def degree_lower_bound(spec, g: GroupTable, x: int, M) -> tuple[int, bool]:
    """Lower bound on deg(x) from a maximal cyclic M containing x, and whether it is tight.

    ``M`` is a generator id or the element set of the subgroup.
    """
    _require_nonidentity(x)
    sd = sylow_data(spec, g)
    gen = _as_generator(g, M)
    if gen not in _maximal_for_bits(spec, g, _all_bits(sd)):
        raise ValueError("M is not a maximal cyclic subgroup")
    if not g.member[gen, x]:
        raise ValueError(f"M does not contain {x}")
    bits = int(sd.support[x])
    o = int(g.element_orders[x])
    gammas = _exps(int(g.element_orders[gen]), sd.primes)
    betas = _exps(o, sd.primes)
    cofactor, spread = 1, 1
    for i, (p, a) in enumerate(zip(sd.primes, sd.alphas)):
        if bits >> i & 1:
            spread *= p ** gammas[i] - p ** (betas[i] - 1)
        else:
            cofactor *= p**a
    bound = o - euler_phi(o) + cofactor * spread - 1

    h = _sub_mask(sd, bits)
    local = [y for y in _maximal_for_bits(spec, g, bits) if g.member[y, x]]
    m_in_h = g.member[gen] & h
    predicted = len(local) == 1 and bool((g.member[local[0]] == m_in_h).all())
    return bound, predicted


# ---------------------------------------------------------------------------
# minimum-degree witnesses
# ---------------------------------------------------------------------------


def _is_cyclic_subset(g: GroupTable, mask) -> bool:
    return bool((g.element_orders[mask] == mask.sum()).any())


def _has_order_two_maximal(g: GroupTable, mask) -> bool:
    return any(g.element_orders[y] == 2 for y in maximal_cyclic_generators(g, mask))


def is_generalized_quaternion(g: GroupTable, mask=None) -> bool:
    mask = np.ones(g.order, dtype=bool) if mask is None else mask
    n = int(mask.sum())
    pp = prime_power(n)
    if pp is None or pp[0] != 2 or pp[1] < 3:
        return False
    return int((g.element_orders[mask] == 2).sum()) == 1 and not _is_cyclic_subset(g, mask)


def min_degree_sylow_witness(spec, g: GroupTable, k: int) -> int:
    """Generator of a minimum-order maximal cyclic subgroup of P_k (smallest id on ties)."""
    sd = sylow_data(spec, g)
    gens = maximal_cyclic_generators(g, sd.masks[k])
    if not gens:
        raise NotApplicable(f"P_{k} has no maximal cyclic subgroup")
    return gens[0]


def _noncyclic_with_order_two_maximal(g, mask) -> bool:
    return not _is_cyclic_subset(g, mask) and _has_order_two_maximal(g, mask)


def strict_delta_bound_check(spec, g: GroupTable) -> bool:
    """delta < product of the odd Sylow orders, for r >= 3 and the stated Sylow shape."""
    sd = sylow_data(spec, g)
    r = len(sd.primes)
    if r < 3:
        raise NotApplicable(f"needs at least 3 prime divisors, got {r}")
    if sd.primes[0] != 2 or not _noncyclic_with_order_two_maximal(g, sd.masks[0]):
        raise NotApplicable("Sylow 2-subgroup must be noncyclic with a maximal cyclic subgroup of order 2")
    if not all(_is_cyclic_subset(g, m) for m in sd.masks[1:]):
        raise NotApplicable("odd Sylow subgroups must be cyclic")
    bound = 1
    for p, a in zip(sd.primes[1:], sd.alphas[1:]):
        bound *= p**a
    return min_degree(power_graph_of(g))[0] < bound


def _check_r2(sd: SylowData, g: GroupTable):
    if len(sd.primes) != 2:
        raise NotApplicable(f"needs exactly 2 prime divisors, got {len(sd.primes)}")
    if _is_cyclic_subset(g, sd.masks[0]):
        raise NotApplicable("P_1 must be noncyclic")
    if not _is_cyclic_subset(g, sd.masks[1]):
        raise NotApplicable("P_2 must be cyclic")


def delta_witness_r2(spec, g: GroupTable) -> int:
    """P_1-component of a minimum-order maximal cyclic generator; it attains delta."""
    sd = sylow_data(spec, g)
    _check_r2(sd, g)
    y = maximal_cyclic_generators(g)[0]
    return int(sd.components[y, 0])


@dataclass(frozen=True)
class OrderingCheck:
    generator: int
    below_second: bool  # deg(y) < deg(y_2)
    above_first: bool  # deg(y) > deg(y_1)
    full_support_above_first: bool  # deg(x) > deg(y_1) for x in <y> with full support


def ordering_checks_r2(spec, g: GroupTable) -> list[OrderingCheck]:
    sd = sylow_data(spec, g)
    _check_r2(sd, g)
    deg = power_graph_of(g).degrees
    out = []
    for y in maximal_cyclic_generators(g):
        y1, y2 = (int(c) for c in sd.components[y])
        inside = np.flatnonzero(g.member[y] & (sd.support == 3))
        out.append(
            OrderingCheck(
                y,
                bool(deg[y] < deg[y2]),
                bool(deg[y] > deg[y1]),
                bool((deg[inside] > deg[y1]).all()),
            )
        )
    return out


# ---------------------------------------------------------------------------
# equality criteria
# ---------------------------------------------------------------------------


def p_group_equality_predicate(g: GroupTable) -> bool:
    pp = prime_power(g.order)
    if pp is None:
        raise NotApplicable(f"order {g.order} is not a prime power")
    if g.is_cyclic:
        return True
    return pp[0] == 2 and _has_order_two_maximal(g, np.ones(g.order, dtype=bool))


def cyclic_equality_predicate(n: int) -> bool:
    """True iff n is a prime power or twice a prime power (1 and 2 included)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    m = n // 2 if n % 2 == 0 else n
    return m == 1 or prime_power(m) is not None


def kappa_formula_check(spec, g: GroupTable, kappa: int | None = None) -> bool:
    """kappa = p^t for noncyclic G of order 2^s p^t with the stated Sylow shape."""
    sd = sylow_data(spec, g)
    if len(sd.primes) != 2 or sd.primes[0] != 2:
        raise NotApplicable(f"order {g.order} is not 2^s p^t with s, t >= 1")
    if g.is_cyclic:
        raise NotApplicable("group is cyclic")
    two = sd.masks[0]
    if _is_cyclic_subset(g, two) or is_generalized_quaternion(g, two):
        raise NotApplicable("Sylow 2-subgroup is cyclic or generalized quaternion")
    if not _is_cyclic_subset(g, sd.masks[1]):
        raise NotApplicable("Sylow p-subgroup is not cyclic")
    if kappa is None:
        kappa = vertex_connectivity(power_graph_of(g))[0]
    return kappa == sd.primes[1] ** sd.alphas[1]


def necessary_condition_check(g: GroupTable, report: ConnectivityReport) -> bool:
    """If kappa == delta then some minimum-degree element has order 2 and |G| is even."""
    pp = prime_power(g.order)
    if g.is_cyclic and (pp is not None or g.order == 1):
        raise NotApplicable("group is a cyclic p-group")
    if report.kappa != report.delta:
        return True
    deg = power_graph_of(g).degrees
    attainers = np.flatnonzero(deg == report.delta)
    return g.order % 2 == 0 and bool((g.element_orders[attainers] == 2).any())


def theorem_predicate(spec, g: GroupTable) -> str:
    """Structural clause under which kappa == delta is predicted: "1", "2" or "none"."""
    sd = sylow_data(spec, g)
    if g.is_cyclic:
        return "1" if cyclic_equality_predicate(g.order) else "none"
    if sd.primes[0] != 2 or len(sd.primes) > 2:
        return "none"
    if not _noncyclic_with_order_two_maximal(g, sd.masks[0]):
        return "none"
    if len(sd.primes) == 2 and not _is_cyclic_subset(g, sd.masks[1]):
        return "none"
    return "2"


@dataclass(frozen=True)
class TheoremVerdict:
    group_label: str
    kappa: int
    delta: int
    equality_holds: bool
    predicate_holds: bool
    clause: str

    @property
    def agreement(self) -> bool:
        return self.equality_holds == self.predicate_holds


def theorem_verdict(spec, g: GroupTable, kappa: int | None = None, predicate=theorem_predicate) -> TheoremVerdict:
    pg = power_graph_of(g)
    if kappa is None:
        kappa = vertex_connectivity(pg)[0]
    delta = min_degree(pg)[0]
    clause = predicate(spec, g)
    return TheoremVerdict(g.label, kappa, delta, kappa == delta, clause != "none", clause)
