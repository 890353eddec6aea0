"""Instance streams for verification: enumeration and seeded random grafts."""

from itertools import combinations
from typing import Iterator, List, Tuple

import numpy as np
import structlog

from shared.data_contracts.verification import (
    GeneratorKind,
    InstanceSpec,
    TerminalPolicy,
)

from ..domain.exceptions import SizeCapError
from ..domain.graph import Multigraph, is_bipartite
from ..domain.models import Graft
from . import config

logger = structlog.get_logger(__name__)


def even_subsets(n: int) -> Iterator[int]:
    """Vertex subsets of even size in ascending mask order."""
    for mask in range(1 << n):
        if bin(mask).count("1") % 2 == 0:
            yield mask


def _connected_mask(n: int, pairs: List[Tuple[int, int]]) -> bool:
    adjacent = [0] * n
    for u, v in pairs:
        adjacent[u] |= 1 << v
        adjacent[v] |= 1 << u
    seen = 1
    frontier = 1
    while frontier:
        grown = 0
        for v in range(n):
            if (frontier >> v) & 1:
                grown |= adjacent[v]
        frontier = grown & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def _multiplicities(
    pairs: List[Tuple[int, int]], max_edges: int
) -> Iterator[List[Tuple[int, int]]]:
    """Each chosen pair once or twice, up to max_edges in total."""
    for doubled in range(1 << len(pairs)):
        if len(pairs) + bin(doubled).count("1") > max_edges:
            continue
        edges: List[Tuple[int, int]] = []
        for i, pair in enumerate(pairs):
            edges.append(pair)
            if (doubled >> i) & 1:
                edges.append(pair)
        yield edges


def enumerate_grafts(spec: InstanceSpec) -> Iterator[Graft]:
    """All connected labeled graphs within the size bounds with their terminal sets.

    The stream order is deterministic: vertex count, then edge subset mask,
    then parallel-edge pattern, then terminal mask. Vertex counts above
    ``config.ENUMERATE_VERTEX_CAP`` raise SizeCapError before anything is yielded.
    """
    if spec.max_vertices > config.ENUMERATE_VERTEX_CAP:
        raise SizeCapError(
            f"enumeration is capped at {config.ENUMERATE_VERTEX_CAP} vertices, "
            f"asked for {spec.max_vertices}"
        )
    return _enumerate(spec)


def _enumerate(spec: InstanceSpec) -> Iterator[Graft]:
    for n in range(spec.min_vertices, spec.max_vertices + 1):
        all_pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(all_pairs)):
            size = bin(mask).count("1")
            if size > spec.max_edges or size < n - 1:
                continue
            pairs = [all_pairs[i] for i in range(len(all_pairs)) if (mask >> i) & 1]
            if not _connected_mask(n, pairs):
                continue
            graph = Multigraph.from_pairs(n, pairs)
            if spec.bipartite_only and not is_bipartite(graph):
                continue
            if spec.allow_parallel:
                patterns = _multiplicities(pairs, spec.max_edges)
            else:
                patterns = [pairs]
            for edges in patterns:
                multigraph = Multigraph.from_pairs(n, edges)
                if spec.terminal_policy == TerminalPolicy.RANDOM_EVEN:
                    rng = np.random.default_rng([spec.seed, n, mask, len(edges)])
                    yield Graft(multigraph, _draw_terminals(rng, n))
                    continue
                for terminals in even_subsets(n):
                    yield Graft(multigraph, terminals)


def _draw_terminals(rng: np.random.Generator, n: int) -> int:
    mask = int(rng.integers(0, 1 << n))
    if bin(mask).count("1") % 2:
        mask ^= 1 << int(rng.integers(0, n))
    return mask


def random_graft(spec: InstanceSpec, index: int) -> Graft:
    """The index-th graft of a seeded stream.

    A random spanning tree is grown first, then extra edges are drawn from
    the admissible pairs (color-crossing pairs for bipartite streams).
    """
    rng = np.random.default_rng([spec.seed, index])
    high = min(spec.max_vertices, spec.max_edges + 1)
    n = int(rng.integers(spec.min_vertices, max(spec.min_vertices, high) + 1))
    color = [0] * n
    pairs: List[Tuple[int, int]] = []
    for v in range(1, n):
        parent = int(rng.integers(0, v))
        color[v] = 1 - color[parent]
        pairs.append((parent, v))

    low = max(n - 1, spec.min_edges)
    target = int(rng.integers(low, max(low, spec.max_edges) + 1))
    candidates = [
        (u, v)
        for u, v in combinations(range(n), 2)
        if (not spec.bipartite_only or color[u] != color[v])
        and (spec.allow_parallel or (u, v) not in pairs)
    ]
    while len(pairs) < target and candidates:
        pick = int(rng.integers(0, len(candidates)))
        pairs.append(candidates[pick])
        if not spec.allow_parallel:
            candidates.pop(pick)

    terminals = _draw_terminals(rng, n)
    return Graft(Multigraph.from_pairs(n, sorted(pairs)), terminals)


def random_grafts(spec: InstanceSpec) -> Iterator[Graft]:
    for index in range(spec.count):
        yield random_graft(spec, index)


def instances(spec: InstanceSpec) -> Iterator[Graft]:
    """Instance stream selected by the generator kind."""
    logger.info(
        "instance stream",
        generator=spec.generator.value,
        max_vertices=spec.max_vertices,
        max_edges=spec.max_edges,
        bipartite_only=spec.bipartite_only,
    )
    if spec.generator == GeneratorKind.ENUMERATE:
        return enumerate_grafts(spec)
    return random_grafts(spec)

