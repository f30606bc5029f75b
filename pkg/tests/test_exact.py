from fractions import Fraction

import pytest
from conftest import complete, cycle, graphs, instance, instances, path
from hypothesis import given, settings

import oracles
from bbcolour.exact import (
    brute_force_bbc,
    brute_force_mad,
    chromatic_number,
    exact_bbc,
    exact_cbc,
    exact_mad,
    mad_exceeds,
)
from bbcolour.generators import gen_lower_bound_family
from bbcolour.graph import Graph, verify_backbone_colouring, verify_circular_colouring
from bbcolour.io import read_colouring


def test_exact_bbc_examples():
    assert exact_bbc(instance(3, path(3))).optimum == 3
    tri = instance(3, complete(3), [(1, 2)])
    assert exact_bbc(tri).optimum == 3 == oracles.enumerate_bbc(3, complete(3), [(1, 2)], 2)


def test_exact_bbc_lower_bound_family():
    result = exact_bbc(gen_lower_bound_family(1))
    assert result.exact and result.optimum == 5


def test_exact_cbc_examples():
    assert exact_cbc(instance(3, path(3))).optimum == 4
    assert exact_cbc(instance(2, [(1, 2)])).optimum == 4
    assert oracles.enumerate_bbc(2, [(1, 2)], [(1, 2)], 2, circular=True) == 4


def test_exact_witness_serialisation():
    result = exact_cbc(instance(3, path(3)))
    text = result.serialize()
    assert text.splitlines()[0] == "x cbc 4"
    col, tag, k = read_colouring(text)
    assert (tag, k) == ("cbc", 4) and verify_circular_colouring(instance(3, path(3)), col, 4).valid


def test_budget_exhaustion_is_reported():
    result = exact_bbc(gen_lower_bound_family(2), budget=0.0)
    assert not result.exact and result.optimum is None
    assert result.lower_bound <= result.upper_bound
    assert verify_backbone_colouring(gen_lower_bound_family(2), result.witness).valid
    assert result.serialize().startswith("c inexact bbc")


def test_brute_force_examples():
    assert brute_force_bbc(instance(2, [(1, 2)])) == 3
    assert brute_force_bbc(instance(2, [(1, 2)], q=3)) == 4
    assert brute_force_bbc(instance(3, [], [])) == 1
    with pytest.raises(ValueError):
        brute_force_bbc(instance(9, path(9)))


@given(instances(graphs(max_n=5), qs=(1, 2, 3)))
def test_brute_force_matches_plain_enumeration(inst):
    assert brute_force_bbc(inst) == oracles.enumerate_bbc(
        inst.n, inst.host.edges, inst.backbone_edges, inst.q)
    assert brute_force_bbc(inst, circular=True) == oracles.enumerate_bbc(
        inst.n, inst.host.edges, inst.backbone_edges, inst.q, circular=True)


@given(instances(graphs(max_n=6), qs=(2, 3)))
def test_exact_matches_brute_force(inst):
    result = exact_bbc(inst)
    assert result.optimum == brute_force_bbc(inst)
    assert verify_backbone_colouring(inst, result.witness).valid
    assert result.witness.span == result.optimum
    circ = exact_cbc(inst)
    assert circ.optimum == brute_force_bbc(inst, circular=True)
    assert verify_circular_colouring(inst, circ.witness, circ.optimum).valid


@settings(max_examples=40)
@given(instances(graphs(min_n=1, max_n=7), qs=(1, 2, 3)))
def test_sandwiches(inst):
    q = inst.q
    bbc, cbc = exact_bbc(inst).optimum, exact_cbc(inst).optimum
    chi_g = oracles.chromatic_number(inst.n, inst.host.edges)
    chi_h = oracles.chromatic_number(inst.n, inst.backbone_edges)
    assert q * chi_h - q + 1 <= bbc <= q * chi_g - q + 1
    assert bbc <= cbc <= bbc + q - 1
    assert q * chi_h - q + 1 <= cbc <= q * chi_g


def test_chromatic_number():
    assert chromatic_number(Graph.from_edges(5, cycle(5))) == 3
    assert chromatic_number(Graph.from_edges(4, complete(4))) == 4
    assert chromatic_number(Graph.empty(3)) == 1


def test_mad_examples():
    k4 = exact_mad(Graph.from_edges(4, complete(4)))
    assert k4.value == 3 and k4.witness == {1, 2, 3, 4}
    p4 = exact_mad(Graph.from_edges(4, path(4)))
    assert p4.value == Fraction(3, 2) == oracles.mad(4, path(4)) and p4.witness == {1, 2, 3, 4}
    tree = Graph.from_edges(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)])
    assert exact_mad(tree).value < 2
    assert exact_mad(Graph.empty(3)).value == 0


def test_brute_force_mad_examples():
    assert brute_force_mad(Graph.from_edges(4, cycle(4))).value == 2
    assert brute_force_mad(Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])).value == Fraction(3, 2)
    k4_minus = [e for e in complete(4) if e != (3, 4)]
    result = brute_force_mad(Graph.from_edges(4, k4_minus))
    assert result.value == Fraction(5, 2) == oracles.mad(4, k4_minus)
    assert result.witness == {1, 2, 3, 4}
    with pytest.raises(ValueError):
        brute_force_mad(Graph.empty(16))


def _average(g, s):
    return Fraction(2 * sum(1 for u, v in g.edges if u in s and v in s), len(s))


@given(graphs(min_n=1, max_n=9))
def test_mad_matches_brute_force(g):
    ours, ref = exact_mad(g), brute_force_mad(g)
    assert ours.value == ref.value == oracles.mad(g.n, g.edges)
    assert _average(g, ours.witness) == ours.value


@given(graphs(min_n=1, max_n=8))
def test_mad_exceeds_threshold(g):
    value = oracles.mad(g.n, g.edges)
    assert mad_exceeds(g, value) is None
    if value > 0:
        witness = mad_exceeds(g, value - Fraction(1, 100))
        assert witness and _average(g, witness) > value - Fraction(1, 100)
