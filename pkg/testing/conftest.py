"""Shared fixtures: the worked example grafts used across the suite."""

from typing import Sequence, Tuple

import pytest

from src.domain.graph import Multigraph, bits
from src.domain.models import Graft
from src.infrastructure import config
from shared.monitoring.telemetry import setup_structured_logging

NAMES = "abcdefgh"


def make_graft(
    n: int, pairs: Sequence[Tuple[int, int]], terminals: Sequence[int] = (), **kwargs
) -> Graft:
    return Graft(Multigraph.from_pairs(n, list(pairs)), bits(terminals), **kwargs)


def vset(names: str) -> int:
    """Vertex set from letters, e.g. vset("ac")."""
    return bits(NAMES.index(name) for name in names)


@pytest.fixture(autouse=True, scope="session")
def _stderr_logging():
    """Route structlog to stderr as the CLI does, independent of test order."""
    setup_structured_logging("grafts", level=config.LOG_LEVEL, fmt=config.LOG_FORMAT)


A, B, C, D, E, F = range(6)

CYCLE4 = [(A, B), (B, C), (C, D), (D, A)]


@pytest.fixture
def path3():
    """a - b - c with T = {a, c}."""
    return make_graft(3, [(A, B), (B, C)], [A, C])


@pytest.fixture
def cycle4_empty():
    return make_graft(4, CYCLE4)


@pytest.fixture
def cycle4_all():
    return make_graft(4, CYCLE4, [A, B, C, D])


@pytest.fixture
def cycle4_ac():
    return make_graft(4, CYCLE4, [A, C])


@pytest.fixture
def single_edge():
    return make_graft(2, [(A, B)], [A, B])


@pytest.fixture
def single_vertex():
    return make_graft(1, [])


@pytest.fixture
def cycle6_empty():
    return make_graft(6, [(A, B), (B, C), (C, D), (D, E), (E, F), (F, A)])


@pytest.fixture
def worked_examples(
    path3, cycle4_empty, cycle4_all, cycle4_ac, single_edge, cycle6_empty
):
    return [path3, cycle4_empty, cycle4_all, cycle4_ac, single_edge, cycle6_empty]


@pytest.fixture
def crossed_roots():
    """a-d, a-f, b-c, b-d, b-e, b-f with T = {a, f}; {b, d} meets both colors."""
    return make_graft(6, [(A, D), (A, F), (B, C), (B, D), (B, E), (B, F)], [A, F])


@pytest.fixture
def star6_empty():
    """a joined to b..f, no terminals."""
    return make_graft(6, [(A, B), (A, C), (A, D), (A, E), (A, F)])
