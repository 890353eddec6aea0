import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import vset
from src.application.join_solver import (
    allowed_edges,
    factor_components,
    get_solver,
    is_join,
    is_minimum,
    join_circuits,
    min_join,
    negative_circuit,
    nu,
    nu_bruteforce,
    set_solver,
    subgraft,
)
from src.domain.exceptions import InfeasibleError, NotAJoinError
from src.domain.graph import members, odd_vertices
from src.infrastructure.join_solvers import BruteForceJoinSolver, PairingJoinSolver
from strategies import grafts


def nu_by_matching(gt) -> int:
    """Minimum-weight perfect matching of the terminals under hop distances."""
    g = nx.MultiGraph()
    g.add_nodes_from(range(gt.vertex_count))
    g.add_edges_from((e.u, e.v) for e in gt.graph.edges)
    hops = dict(nx.all_pairs_shortest_path_length(g))
    terminals = members(gt.terminals)
    if not terminals:
        return 0
    complete = nx.Graph()
    for i, u in enumerate(terminals):
        for v in terminals[i + 1:]:
            complete.add_edge(u, v, weight=hops[u][v])
    matching = nx.min_weight_matching(complete)
    return sum(hops[u][v] for u, v in matching)


def test_path3_join(path3):
    certificate = min_join(path3)
    assert nu(path3) == 2
    assert certificate.edge_ids == [0, 1]
    assert allowed_edges(path3) == 0b11


def test_cycle4_all_has_two_minimum_joins(cycle4_all):
    assert nu_bruteforce(cycle4_all) == (2, [0b0101, 0b1010])
    assert min_join(cycle4_all).edge_ids == [0, 2]
    assert allowed_edges(cycle4_all) == 0b1111


def test_cycle4_ac_lexicographic_join(cycle4_ac):
    assert min_join(cycle4_ac).edge_ids == [0, 1]
    assert nu_bruteforce(cycle4_ac) == (2, [0b0011, 0b1100])


def test_empty_terminals(cycle4_empty, single_vertex):
    assert nu(cycle4_empty) == 0
    assert min_join(cycle4_empty).edges == 0
    assert allowed_edges(cycle4_empty) == 0
    assert factor_components(cycle4_empty) == [
        vset("a"),
        vset("b"),
        vset("c"),
        vset("d"),
    ]
    assert nu(single_vertex) == 0


def test_window_with_odd_component_is_infeasible(path3):
    with pytest.raises(InfeasibleError):
        nu(path3, edge_window=0b01)


def test_join_circuits_of_a_cycle(cycle4_empty):
    assert join_circuits(cycle4_empty, 0b1111) == [0b1111]


def test_negative_circuit_of_a_larger_join(cycle4_empty):
    assert negative_circuit(cycle4_empty, 0b1111) == 0b1111
    assert not is_minimum(cycle4_empty, 0b1111)
    assert negative_circuit(cycle4_empty, 0) is None


def test_negative_circuit_rejects_non_joins(path3):
    with pytest.raises(NotAJoinError):
        negative_circuit(path3, 0b01)


def test_subgraft_terminals_follow_the_join(cycle4_all):
    view = subgraft(cycle4_all, 0b0101, vset("ab"))
    assert view.induced_terminals == vset("ab")
    assert view.local_join == 0b1
    other = subgraft(cycle4_all, 0b1010, vset("ab"))
    assert other.induced_terminals == 0


def test_solver_strategies_agree(cycle4_all, path3):
    previous = get_solver()
    try:
        set_solver(BruteForceJoinSolver())
        assert nu(cycle4_all) == 2
        assert min_join(path3).edge_ids == [0, 1]
    finally:
        set_solver(previous)
    assert isinstance(get_solver(), PairingJoinSolver)


@settings(max_examples=80, deadline=None)
@given(grafts(max_vertices=7, max_extra_edges=5, bipartite=False, parallel=True))
def test_pairing_matches_exhaustive_search(gt):
    brute_nu, joins = nu_bruteforce(gt)
    certificate = min_join(gt)
    assert nu(gt) == brute_nu == certificate.size
    assert certificate.edges == joins[0]
    assert is_join(gt, certificate.edges)
    union = 0
    for f in joins:
        union |= f
        assert odd_vertices(gt.graph, f) == gt.terminals
    assert allowed_edges(gt) == union


@settings(max_examples=80, deadline=None)
@given(grafts(max_vertices=8, max_extra_edges=6, bipartite=False))
def test_nu_matches_networkx_matching(gt):
    assert nu(gt) == nu_by_matching(gt)


def test_negative_circuit_closes_through_the_lighter_edge(crossed_roots, cycle6_empty):
    # a-d-b-f joins {a, f} the long way; a-f closes the only circuit
    assert is_join(crossed_roots, 0b101001)
    assert negative_circuit(crossed_roots, 0b101001) == 0b101011
    assert negative_circuit(crossed_roots, 0b000010) is None
    assert negative_circuit(cycle6_empty, 0b111111) == 0b111111


def test_subgraft_over_a_split_window(path3):
    view = subgraft(path3, 0b11, vset("ac"))
    assert view.induced_terminals == 0
    assert view.local_join == 0
