import numpy as np
import pytest

from oracles import naive_power_graph, nx_kappa
from powergraph.connectivity import connectivity_report
from powergraph.graph import build_power_graph
from powergraph.groups import build_cyclic, direct_product, maximal_cyclic_generators, parse_descriptor
from powergraph.theorems import (
    NotApplicable,
    cyclic_equality_predicate,
    degree,
    degree_lower_bound,
    degree_via_formula,
    delta_witness_r2,
    is_generalized_quaternion,
    kappa_formula_check,
    min_degree_sylow_witness,
    necessary_condition_check,
    ordering_checks_r2,
    p_group_equality_predicate,
    sets_A_B,
    sets_A_equals_B,
    strict_delta_bound_check,
    theorem_predicate,
    theorem_verdict,
)


def make(desc):
    spec = parse_descriptor(desc)
    return spec, direct_product(spec)


def involutions(g):
    return [int(x) for x in np.flatnonzero(g.element_orders == 2)]


KLEIN_C3 = "elementary:2^2;cyclic:3^1"
KLEIN_C9 = "elementary:2^2;cyclic:3^2"


def test_lemma_examples():
    spec, g = make("cyclic:2^1;cyclic:3^1")
    full = next(x for x in range(6) if g.element_orders[x] == 6)
    assert sets_A_equals_B(spec, g, full)
    spec, g = make(KLEIN_C3)
    assert all(sets_A_equals_B(spec, g, x) for x in involutions(g))
    c6 = build_cyclic(6)
    a, b = sets_A_B(None, c6, 2)
    assert a == b == {1, 4, 5}
    with pytest.raises(ValueError):
        sets_A_equals_B(None, c6, 0)


def test_degree_formula_examples():
    spec, g = make(KLEIN_C3)
    x = involutions(g)[0]
    br = degree_via_formula(spec, g, x)
    assert (br.element_order, br.phi_order, br.cofactor, br.generator_count, br.value) == (2, 1, 3, 1, 3)
    assert br.support == {0}
    assert br.value == naive_power_graph(g).degree(x)

    c27 = build_cyclic(27)
    assert degree_via_formula(None, c27, 1).value == 26

    c6 = build_cyclic(6)
    br = degree_via_formula(None, c6, 3)
    assert (br.element_order, br.phi_order, br.cofactor, br.generator_count, br.value) == (2, 1, 3, 1, 3)
    with pytest.raises(ValueError):
        degree_via_formula(None, c6, 0)


def test_degree_formula_breakdown_ranges():
    spec, g = make("dihedral:2^3;cyclic:3^2;cyclic:5^1")
    for x in range(1, g.order):
        br = degree_via_formula(spec, g, x)
        assert br.value == br.element_order - br.phi_order + br.cofactor * br.generator_count - 1
        for i in br.support:
            assert 1 <= br.component_orders[i] <= br.maximal_orders[i] <= spec.exponents[i]


def test_lower_bound_examples():
    spec, g = make(KLEIN_C9)
    x = involutions(g)[0]
    m = next(y for y in maximal_cyclic_generators(g) if g.member[y, x])
    assert g.element_orders[m] == 18
    assert degree_lower_bound(spec, g, x, m) == (9, True)
    assert naive_power_graph(g).degree(x) == 9

    c27 = build_cyclic(27)
    assert degree_lower_bound(None, c27, 1, frozenset(range(27))) == (26, True)

    spec, q8 = make("dicyclic:2^3")
    inv = involutions(q8)[0]
    m = maximal_cyclic_generators(q8)[0]
    bound, tight = degree_lower_bound(spec, q8, inv, m)
    assert (bound, tight) == (3, False)
    assert degree(q8, inv) == 7


def test_lower_bound_rejects_bad_subgroup():
    spec, q8 = make("dicyclic:2^3")
    inv = involutions(q8)[0]
    with pytest.raises(ValueError, match="not a maximal"):
        degree_lower_bound(spec, q8, inv, frozenset({0, inv}))
    gens = maximal_cyclic_generators(q8)
    x = next(int(x) for x in range(1, 8) if q8.element_orders[x] == 4 and not q8.member[gens[0], x])
    with pytest.raises(ValueError, match="does not contain"):
        degree_lower_bound(spec, q8, x, gens[0])


def test_sylow_witness_examples():
    spec, g = make("cyclic:2^3;cyclic:3^1")
    w = min_degree_sylow_witness(spec, g, 0)
    assert g.element_orders[w] == 8
    spec, g = make(KLEIN_C3)
    w = min_degree_sylow_witness(spec, g, 0)
    p1 = np.flatnonzero(g.element_orders <= 2)
    assert g.element_orders[w] == 2 and degree(g, w) == 3
    assert all(degree(g, w) <= degree(g, int(x)) for x in p1)
    spec, g = make("dihedral:2^3")
    w = min_degree_sylow_witness(spec, g, 0)
    assert g.element_orders[w] == 2 and degree(g, w) == 1


def test_strict_delta_bound_examples():
    spec, g = make("elementary:2^2;cyclic:3^1;cyclic:5^1")
    assert strict_delta_bound_check(spec, g)
    assert build_power_graph(g).degrees.min() == 13
    spec, g = make("elementary:2^2;cyclic:3^2;cyclic:5^1")
    assert strict_delta_bound_check(spec, g)
    assert build_power_graph(g).degrees.min() == 41
    with pytest.raises(NotApplicable):
        strict_delta_bound_check(*make(KLEIN_C3))


def test_delta_witness_r2_examples():
    spec, g = make(KLEIN_C3)
    y1 = delta_witness_r2(spec, g)
    assert g.element_orders[y1] == 2 and degree(g, y1) == 3 == build_power_graph(g).degrees.min()
    spec, g = make("dihedral:2^3;cyclic:3^2")
    y1 = delta_witness_r2(spec, g)
    assert g.element_orders[y1] == 2 and degree(g, y1) == 9 == build_power_graph(g).degrees.min()
    assert all(c.below_second and c.above_first and c.full_support_above_first for c in ordering_checks_r2(spec, g))
    with pytest.raises(NotApplicable):
        delta_witness_r2(*make("cyclic:2^2;cyclic:3^1"))


def test_p_group_predicate_examples():
    assert p_group_equality_predicate(build_cyclic(27))
    spec, klein = make("elementary:2^2")
    rep = connectivity_report(build_power_graph(klein))
    assert p_group_equality_predicate(klein) and rep.kappa == rep.delta == 1
    spec, q8 = make("dicyclic:2^3")
    rep = connectivity_report(build_power_graph(q8))
    assert not p_group_equality_predicate(q8) and (rep.kappa, rep.delta) == (2, 3)
    with pytest.raises(NotApplicable):
        p_group_equality_predicate(build_cyclic(12))


def test_cyclic_predicate_examples():
    assert cyclic_equality_predicate(9)
    assert cyclic_equality_predicate(18)
    assert cyclic_equality_predicate(1) and cyclic_equality_predicate(2)
    assert not cyclic_equality_predicate(12)
    pg = build_power_graph(build_cyclic(12))
    assert nx_kappa(pg) == 6 and pg.degrees.min() == 7


def test_kappa_formula_examples():
    for desc, expected in [(KLEIN_C3, 3), (KLEIN_C9, 9), ("dihedral:2^3;cyclic:3^1", 3)]:
        spec, g = make(desc)
        assert kappa_formula_check(spec, g)
        assert nx_kappa(build_power_graph(g)) == expected
    for desc in ("dicyclic:2^3;cyclic:3^1", "cyclic:2^2;cyclic:3^1", "elementary:2^2;abelian[1,1]:3^2", "elementary:2^2"):
        with pytest.raises(NotApplicable):
            kappa_formula_check(*make(desc))


def test_necessary_condition_examples():
    spec, g = make(KLEIN_C3)
    rep = connectivity_report(build_power_graph(g))
    assert rep.kappa == rep.delta and necessary_condition_check(g, rep)
    c15 = build_cyclic(15)
    rep = connectivity_report(build_power_graph(c15))
    assert rep.kappa < rep.delta and necessary_condition_check(c15, rep)
    c18 = build_cyclic(18)
    rep = connectivity_report(build_power_graph(c18))
    assert rep.kappa == rep.delta and necessary_condition_check(c18, rep)
    assert degree(c18, 9) == rep.delta
    with pytest.raises(NotApplicable):
        necessary_condition_check(build_cyclic(8), connectivity_report(build_power_graph(build_cyclic(8))))


def test_theorem_predicate_examples():
    assert theorem_predicate(*make("cyclic:2^1;cyclic:3^2")) == "1"
    assert theorem_predicate(*make(KLEIN_C9)) == "2"
    spec, g = make("dicyclic:2^3;cyclic:3^1")
    v = theorem_verdict(spec, g)
    assert v.clause == "none" and v.kappa != v.delta and v.agreement
    assert (v.kappa, v.delta) == (6, 7)


def test_generalized_quaternion_detection():
    assert is_generalized_quaternion(make("dicyclic:2^4")[1])
    assert not is_generalized_quaternion(make("semidihedral:2^4")[1])
    assert not is_generalized_quaternion(build_cyclic(8))
