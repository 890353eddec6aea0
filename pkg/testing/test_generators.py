import pytest
from pydantic import ValidationError

from shared.data_contracts.verification import (
    GeneratorKind,
    InstanceSpec,
    TerminalPolicy,
)
from src.domain.exceptions import SizeCapError
from src.domain.graph import is_bipartite
from src.infrastructure.generators import (
    enumerate_grafts,
    even_subsets,
    instances,
    random_graft,
)


def test_even_subsets():
    assert list(even_subsets(3)) == [0b000, 0b011, 0b101, 0b110]


def test_enumeration_counts():
    assert len(list(enumerate_grafts(InstanceSpec(max_vertices=2)))) == 2
    assert len(list(enumerate_grafts(InstanceSpec(max_vertices=3)))) == 14


def test_enumeration_with_odd_circuits():
    spec = InstanceSpec(max_vertices=3, bipartite_only=False)
    assert len(list(enumerate_grafts(spec))) == 18


def test_enumeration_with_parallel_edges():
    spec = InstanceSpec(max_vertices=2, max_edges=2, allow_parallel=True)
    grafts = list(enumerate_grafts(spec))
    assert sorted(gt.edge_count for gt in grafts) == [1, 1, 2, 2]


def test_one_terminal_set_per_graph_when_drawn():
    spec = InstanceSpec(max_vertices=3, terminal_policy=TerminalPolicy.RANDOM_EVEN)
    grafts = list(enumerate_grafts(spec))
    assert len(grafts) == 4
    assert all(bin(gt.terminals).count("1") % 2 == 0 for gt in grafts)


def test_random_grafts_are_seeded():
    spec = InstanceSpec(
        generator=GeneratorKind.RANDOM, seed=3, max_vertices=8, max_edges=12
    )
    first = random_graft(spec, 5)
    assert random_graft(spec, 5) == first
    assert first.digest() == random_graft(spec, 5).digest()


def test_random_grafts_respect_the_bounds():
    spec = InstanceSpec(
        generator=GeneratorKind.RANDOM,
        seed=11,
        count=30,
        min_vertices=3,
        max_vertices=7,
        max_edges=9,
    )
    grafts = list(instances(spec))
    assert len(grafts) == 30
    for gt in grafts:
        assert 3 <= gt.vertex_count <= 7
        assert gt.vertex_count - 1 <= gt.edge_count <= 9
        assert is_bipartite(gt.graph)


def test_instance_spec_rejects_inverted_ranges():
    with pytest.raises(ValidationError):
        InstanceSpec(min_vertices=5, max_vertices=3)


def test_parallel_streams_produce_parallel_pairs():
    spec = InstanceSpec(
        generator=GeneratorKind.RANDOM,
        seed=1,
        count=200,
        max_vertices=4,
        max_edges=8,
        allow_parallel=True,
    )
    doubled = 0
    for gt in instances(spec):
        pairs = [(e.u, e.v) for e in gt.graph.edges]
        doubled += len(pairs) != len(set(pairs))
    assert doubled > 0


def test_enumeration_is_capped_before_any_instance():
    with pytest.raises(SizeCapError):
        enumerate_grafts(InstanceSpec(max_vertices=8))
    assert next(iter(enumerate_grafts(InstanceSpec(max_vertices=7)))).vertex_count == 2
