import numpy as np
import pytest
from hypothesis import given, settings

from conftest import make_graft, vset
from src.application.distance import (
    all_shortest_paths,
    distance,
    distance_bruteforce,
    distance_components,
    distance_literal,
    distance_matrix,
    distance_via_nu,
    distance_with_path,
    entry_vertex,
    is_extreme,
    is_extreme_literal,
    is_primal,
    profile,
    profile_of_roots,
    trisection,
)
from src.application.join_solver import min_join, nu_bruteforce
from src.domain.exceptions import (
    DisconnectedError,
    NonConservativeError,
    NotAJoinError,
    SizeCapError,
)
from src.domain.graph import is_bipartite
from src.domain.models import Weighting
from strategies import grafts


def weighting_of(gt):
    return Weighting(min_join(gt).edges)


def test_path3_profile(path3):
    prof = profile(path3, weighting_of(path3), 0)
    assert prof.dist == (0, -1, -2)
    assert prof.levels == {-2: vset("c"), -1: vset("b"), 0: vset("a")}
    assert prof.layle(-1) == vset("bc")
    assert prof.lay(0) == vset("bc")


def test_cycle4_empty_profile(cycle4_empty):
    assert profile(cycle4_empty, weighting_of(cycle4_empty), 0).dist == (0, 1, 2, 1)


def test_cycle4_all_profile_and_trisection(cycle4_all):
    w = weighting_of(cycle4_all)
    assert profile(cycle4_all, w, 0).dist == (0, -1, 0, -1)
    tri = trisection(cycle4_all, w, 0)
    assert (tri.initial, tri.a, tri.d) == (vset("abcd"), vset("ac"), vset("bd"))
    assert tri.c == 0


def test_cycle4_empty_trisection(cycle4_empty):
    tri = trisection(cycle4_empty, weighting_of(cycle4_empty), 0)
    assert (tri.a, tri.d, tri.c) == (vset("a"), 0, vset("bcd"))


def test_distance_orientation_on_a_single_edge(single_edge):
    w = weighting_of(single_edge)
    assert distance(single_edge, w, 0, 1) == -1
    assert distance_via_nu(single_edge, 0, 1) == -1
    assert distance_bruteforce(single_edge, w, 0, 1) == -1
    assert distance_literal(single_edge, 0, 1) == 1


def test_shortest_path_witness(path3):
    weight, path = distance_with_path(path3, weighting_of(path3), 2, 0)
    assert weight == -2
    assert path.vertices == (2, 1, 0)
    assert path.is_valid_in(path3.graph)


def test_all_shortest_paths_in_a_cycle(cycle4_empty):
    paths = all_shortest_paths(cycle4_empty, weighting_of(cycle4_empty), 0, 2)
    assert sorted(p.vertices for p in paths) == [(0, 1, 2), (0, 3, 2)]


def test_distance_components_of_path3(path3):
    w = weighting_of(path3)
    family = distance_components(profile(path3, w, 0), path3)
    assert [(c.index, c.vertices, c.capital) for c in family.components] == [
        (-2, vset("c"), False),
        (-1, vset("bc"), False),
        (0, vset("abc"), True),
    ]
    assert entry_vertex(path3, w, vset("c")) == 2
    assert entry_vertex(path3, w, vset("bc")) == 1


def test_capital_components_of_cycle4_empty(cycle4_empty):
    prof = profile(cycle4_empty, weighting_of(cycle4_empty), 0)
    family = distance_components(prof, cycle4_empty)
    assert [family.capital_at(i) for i in range(3)] == [
        vset("a"),
        vset("abd"),
        vset("abcd"),
    ]


def test_extreme_sets(cycle4_all, path3, cycle4_empty):
    assert is_extreme(cycle4_all, vset("ac"))
    assert not is_extreme(cycle4_all, vset("ab"))
    assert not is_extreme(path3, vset("ac"))
    assert is_extreme_literal(cycle4_empty)
    assert not is_extreme_literal(path3)


def test_primal_roots(path3, cycle4_empty):
    assert is_primal(path3, 0)
    assert not is_primal(cycle4_empty, 0)


def test_root_set_profile_takes_the_minimum(cycle4_empty):
    prof = profile_of_roots(cycle4_empty, weighting_of(cycle4_empty), vset("bd"))
    assert prof.dist == (1, 0, 1, 0)


def test_weighting_must_come_from_a_minimum_join(cycle4_empty):
    with pytest.raises(NonConservativeError) as info:
        distance(cycle4_empty, Weighting(0b1111), 0, 2)
    assert info.value.circuit == 0b1111
    with pytest.raises(NotAJoinError):
        distance(cycle4_empty, Weighting(0b0001), 0, 2)


def test_distance_matrix_is_symmetric_and_read_only(cycle4_ac):
    table = distance_matrix(cycle4_ac)
    assert np.array_equal(table, table.T)
    assert table[0, 2] == -2
    assert table[1, 3] == 0
    with pytest.raises(ValueError):
        table[0, 1] = 5


def test_distance_matrix_needs_a_connected_graft():
    gt = make_graft(4, [(0, 1), (2, 3)], allow_disconnected=True)
    with pytest.raises(DisconnectedError):
        distance_matrix(gt)


def test_path_enumeration_cap():
    gt = make_graft(11, [(i, i + 1) for i in range(10)])
    with pytest.raises(SizeCapError):
        distance_bruteforce(gt, Weighting(0), 0, 10)


@settings(max_examples=60, deadline=None)
@given(grafts(max_vertices=7, max_extra_edges=4, bipartite=False, parallel=True))
def test_three_distance_oracles_agree(gt):
    w = weighting_of(gt)
    for u in range(gt.vertex_count):
        for v in range(gt.vertex_count):
            expected = distance_bruteforce(gt, w, u, v)
            assert distance(gt, w, u, v) == expected
            assert distance_via_nu(gt, u, v) == expected
            assert int(distance_matrix(gt)[u, v]) == expected


@settings(max_examples=40, deadline=None)
@given(grafts(max_vertices=6, max_extra_edges=3))
def test_profiles_do_not_depend_on_the_join(gt):
    _, joins = nu_bruteforce(gt)
    for root in range(gt.vertex_count):
        profiles = {profile(gt, Weighting(f), root).dist for f in joins}
        assert len(profiles) == 1


@settings(max_examples=40, deadline=None)
@given(grafts(max_vertices=7, max_extra_edges=4))
def test_bipartite_neighbors_differ_by_one(gt):
    assert is_bipartite(gt.graph)
    table = distance_matrix(gt)
    for edge in gt.graph.edges:
        assert np.all(np.abs(table[:, edge.u] - table[:, edge.v]) == 1)


def test_label_search_follows_the_join_edge(crossed_roots):
    w = weighting_of(crossed_roots)
    assert w.join_edges == 0b10
    assert profile(crossed_roots, w, 1).dist == (0, 0, 1, 1, 1, 1)
    weight, path = distance_with_path(crossed_roots, w, 1, 0)
    assert weight == 0
    assert path.vertices == (1, 5, 0)
    assert all(
        distance(crossed_roots, w, 3, v) == distance_via_nu(crossed_roots, 3, v)
        for v in range(6)
    )
