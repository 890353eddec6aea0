import pytest
from hypothesis import given, settings

from conftest import make_graft, vset
from src.application.harness.capital import capital_chain
from src.domain.exceptions import NotBipartiteError
from strategies import grafts


def test_capital_chain_of_cycle4_empty(cycle4_empty):
    chain = capital_chain(cycle4_empty, 0)
    assert [
        (s.index, s.capital, s.frontier, s.next_capital, s.a_frontier, s.d_frontier)
        for s in chain.steps
    ] == [
        (0, vset("a"), vset("bd"), vset("abd"), vset("bd"), 0),
        (1, vset("abd"), vset("c"), vset("abcd"), vset("c"), 0),
    ]


def test_capital_chain_length_follows_the_largest_distance(cycle6_empty, path3):
    assert len(capital_chain(cycle6_empty, 0).steps) == 3
    assert capital_chain(path3, 0).steps == ()


def test_capital_chain_needs_a_bipartite_graph():
    triangle = make_graft(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(NotBipartiteError):
        capital_chain(triangle, 0)


@settings(max_examples=40, deadline=None)
@given(grafts(max_vertices=7, max_extra_edges=4))
def test_capital_chain_reaches_the_whole_graph(gt):
    for root in range(gt.vertex_count):
        chain = capital_chain(gt, root)
        if chain.steps:
            assert chain.steps[-1].next_capital == gt.all_vertices
