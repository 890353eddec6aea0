import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import CYCLE4, make_graft, vset
from src.domain.exceptions import (
    DisconnectedError,
    NotBipartiteError,
    ParityError,
    SizeCapError,
)
from src.domain.graph import (
    Multigraph,
    PathWitness,
    bipartition,
    bits,
    circuits,
    connected_components,
    cut,
    induced,
    is_bipartite,
    is_round_ear_path,
    members,
    neighbors,
    odd_vertices,
    round_ear_paths,
    simple_paths,
)
from strategies import grafts


def to_networkx(graph: Multigraph) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(range(graph.vertex_count))
    g.add_edges_from((e.u, e.v) for e in graph.edges)
    return g


def test_bits_and_members_agree():
    assert members(bits([5, 0, 3])) == [0, 3, 5]
    assert members(0) == []


def test_cycle_has_one_circuit():
    graph = Multigraph.from_pairs(4, CYCLE4)
    assert circuits(graph) == [0b1111]


def test_parallel_pair_is_a_circuit():
    graph = Multigraph.from_pairs(2, [(0, 1), (0, 1)])
    assert circuits(graph) == [0b11]


def test_cut_and_neighbors():
    graph = Multigraph.from_pairs(4, CYCLE4)
    assert members(cut(graph, vset("a"))) == [0, 3]
    assert neighbors(graph, vset("a")) == vset("bd")


def test_odd_vertices_of_a_path():
    graph = Multigraph.from_pairs(3, [(0, 1), (1, 2)])
    assert odd_vertices(graph, 0b11) == vset("ac")
    assert odd_vertices(graph, 0b01) == vset("ab")


def test_bipartition_puts_minimum_vertex_first():
    graph = Multigraph.from_pairs(4, CYCLE4)
    assert bipartition(graph) == (vset("ac"), vset("bd"))


def test_triangle_is_not_bipartite():
    graph = Multigraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])
    assert not is_bipartite(graph)
    with pytest.raises(NotBipartiteError):
        bipartition(graph)


def test_round_ear_paths_avoid_the_set_inside():
    graph = Multigraph.from_pairs(4, CYCLE4)
    ears = round_ear_paths(graph, vset("ac"))
    assert sorted(p.vertices for p in ears) == [(0, 1, 2), (0, 3, 2)]
    assert all(is_round_ear_path(graph, p, vset("ac")) for p in ears)


def test_round_ear_paths_include_direct_edges():
    graph = Multigraph.from_pairs(4, CYCLE4)
    ears = round_ear_paths(graph, vset("ab"))
    assert sorted(len(p.edge_ids) for p in ears) == [1, 3]


def test_simple_paths_respect_the_window():
    graph = Multigraph.from_pairs(4, CYCLE4)
    paths = list(simple_paths(graph, 0, 2, within=vset("abc")))
    assert [p.vertices for p in paths] == [(0, 1, 2)]


def test_induced_reindexes_densely():
    graph = Multigraph.from_pairs(4, CYCLE4)
    sub, vertex_order, edge_order = induced(graph, vset("bcd"))
    assert vertex_order == (1, 2, 3)
    assert edge_order == (1, 2)
    assert [(e.u, e.v) for e in sub.edges] == [(0, 1), (1, 2)]


def test_path_witness_rejects_repeated_vertices():
    with pytest.raises(ValueError):
        PathWitness((0, 1, 0), (0, 0))


def test_subpath_orientation():
    path = PathWitness((0, 1, 2, 3), (0, 1, 2))
    assert path.subpath(3, 1).vertices == (3, 2, 1)


def test_graft_rejects_odd_terminal_count():
    with pytest.raises(ParityError):
        make_graft(3, [(0, 1), (1, 2)], [0])


def test_graft_rejects_disconnected_graph_unless_allowed():
    with pytest.raises(DisconnectedError):
        make_graft(4, [(0, 1), (2, 3)])
    gt = make_graft(4, [(0, 1), (2, 3)], [0, 1], allow_disconnected=True)
    assert len(gt.components) == 2


def test_vertex_cap():
    with pytest.raises(SizeCapError):
        Multigraph.from_pairs(65, [])


@settings(max_examples=60, deadline=None)
@given(grafts(max_vertices=7, max_extra_edges=5, bipartite=False, parallel=True))
def test_components_match_networkx(gt):
    ours = sorted(frozenset(members(c)) for c in connected_components(gt.graph))
    graph = to_networkx(gt.graph)
    theirs = sorted(frozenset(c) for c in nx.connected_components(graph))
    assert ours == theirs


@settings(max_examples=60, deadline=None)
@given(grafts(max_vertices=7, max_extra_edges=5, bipartite=False))
def test_bipartite_matches_networkx(gt):
    assert is_bipartite(gt.graph) == nx.is_bipartite(to_networkx(gt.graph))


@settings(max_examples=40, deadline=None)
@given(grafts(max_vertices=6, max_extra_edges=3, bipartite=False))
def test_circuits_match_networkx_cycle_basis_rank(gt):
    graph = gt.graph
    found = circuits(graph)
    assert len(set(found)) == len(found)
    assert all(odd_vertices(graph, c) == 0 for c in found)
    rank = graph.edge_count - graph.vertex_count + 1
    assert (rank == 0) == (not found)
