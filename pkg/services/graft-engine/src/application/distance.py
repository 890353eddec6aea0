"""F-weights, F-distances, distance components and the A/D/C trisection.

A weighting is only meaningful for a minimum join; every entry point that
takes one checks it first and raises NonConservativeError with a negative
circuit otherwise.
"""

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Deque, List, Optional, Tuple, Union

import numpy as np
import structlog

from ..domain.exceptions import (
    DisconnectedError,
    NonConservativeError,
    NotAJoinError,
    SizeCapError,
    StructureViolation,
)
from ..domain.graph import (
    EdgeSet,
    Multigraph,
    PathWitness,
    VertexSet,
    connected_components,
    cut,
    members,
    simple_paths,
)
from ..domain.models import (
    DistanceComponent,
    DistanceComponentFamily,
    DistanceProfile,
    Graft,
    Trisection,
    Weighting,
)
from ..infrastructure.config import PATH_VERTEX_CAP
from .join_solver import is_join, negative_circuit, nu

logger = structlog.get_logger(__name__)


def f_weight(w: Weighting, edges: EdgeSet) -> int:
    """Edges outside F count +1, edges of F count -1."""
    return w.weight_of(edges)


@lru_cache(maxsize=8192)
def require_minimum(gt: Graft, w: Weighting) -> None:
    if not is_join(gt, w.join_edges):
        raise NotAJoinError(f"{members(w.join_edges)} is not a join")
    circuit = negative_circuit(gt, w.join_edges)
    if circuit is not None:
        raise NonConservativeError(
            f"circuit {members(circuit)} has negative weight", circuit=circuit
        )


@dataclass(frozen=True)
class _Label:
    vertex: int
    visited: VertexSet
    weight: int
    path: PathWitness


@lru_cache(maxsize=65536)
def shortest_paths_from(
    gt: Graft, w: Weighting, source: int
) -> Tuple[Optional[PathWitness], ...]:
    """An F-shortest path from source to every vertex, None where unreachable.

    Label-correcting relaxation over simple paths with the ±1 weights. A label
    at a vertex is dropped when another label there visited a subset of its
    vertices at no larger weight, so the per-vertex best label is exact.
    """
    require_minimum(gt, w)
    graph = gt.graph
    best: List[Optional[_Label]] = [None] * graph.vertex_count
    kept: List[List[_Label]] = [[] for _ in range(graph.vertex_count)]
    start = _Label(source, 1 << source, 0, PathWitness((source,), ()))
    kept[source].append(start)
    best[source] = start
    queue: Deque[_Label] = deque([start])
    while queue:
        label = queue.popleft()
        if all(other is not label for other in kept[label.vertex]):
            continue
        for u, edge_id in graph.adjacency[label.vertex]:
            if (label.visited >> u) & 1:
                continue
            visited = label.visited | (1 << u)
            weight = label.weight + w.weight_of(1 << edge_id)
            if any(
                other.visited & ~visited == 0 and other.weight <= weight
                for other in kept[u]
            ):
                continue
            path = PathWitness(
                label.path.vertices + (u,), label.path.edge_ids + (edge_id,)
            )
            extended = _Label(u, visited, weight, path)
            kept[u] = [
                other
                for other in kept[u]
                if not (visited & ~other.visited == 0 and weight <= other.weight)
            ]
            kept[u].append(extended)
            current = best[u]
            if current is None or weight < current.weight:
                best[u] = extended
            queue.append(extended)
    return tuple(None if label is None else label.path for label in best)


def shortest_path(gt: Graft, w: Weighting, u: int, v: int) -> PathWitness:
    """An F-shortest u-v path from the label-correcting search at u."""
    path = shortest_paths_from(gt, w, u)[v]
    if path is None:
        raise DisconnectedError(f"vertices {u} and {v} lie in different components")
    return path


def distance_with_path(
    gt: Graft, w: Weighting, u: int, v: int
) -> Tuple[int, PathWitness]:
    path = shortest_path(gt, w, u, v)
    return w.weight_of(path.edge_set), path


def distance(gt: Graft, w: Weighting, u: int, v: int) -> int:
    return distance_with_path(gt, w, u, v)[0]


def distance_via_nu(gt: Graft, u: int, v: int) -> int:
    """ν(G, T Δ {u,v}) - ν(G, T)."""
    if u == v:
        return 0
    return nu(gt.toggled(u, v)) - nu(gt)


def distance_literal(gt: Graft, u: int, v: int) -> int:
    """ν(G, T) - ν(G, T Δ {u,v}), the opposite orientation."""
    return -distance_via_nu(gt, u, v)


def _require_path_cap(gt: Graft) -> None:
    if gt.vertex_count > PATH_VERTEX_CAP:
        raise SizeCapError(
            f"{gt.vertex_count} vertices exceed the path enumeration cap "
            f"of {PATH_VERTEX_CAP}"
        )


def distance_bruteforce(gt: Graft, w: Weighting, u: int, v: int) -> int:
    """Minimum F-weight over every simple u-v path."""
    paths = all_shortest_paths(gt, w, u, v)
    if not paths:
        raise DisconnectedError(f"no path joins {u} and {v}")
    return w.weight_of(paths[0].edge_set)


@lru_cache(maxsize=65536)
def all_shortest_paths(
    gt: Graft, w: Weighting, u: int, v: int
) -> Tuple[PathWitness, ...]:
    """Every F-shortest simple u-v path, by enumeration."""
    _require_path_cap(gt)
    if u == v:
        return (PathWitness((u,), ()),)
    paths = list(simple_paths(gt.graph, u, v))
    if not paths:
        return ()
    best = min(w.weight_of(p.edge_set) for p in paths)
    return tuple(p for p in paths if w.weight_of(p.edge_set) == best)


@lru_cache(maxsize=4096)
def distance_matrix(gt: Graft) -> np.ndarray:
    """All-pairs distances from ν differences; read-only."""
    if len(gt.components) > 1:
        raise DisconnectedError("distance matrix needs a connected graft")
    n = gt.vertex_count
    base = nu(gt)
    table = np.zeros((n, n), dtype=np.int64)
    for u in range(n):
        for v in range(u + 1, n):
            table[u, v] = table[v, u] = nu(gt.toggled(u, v)) - base
    table.flags.writeable = False
    return table


@lru_cache(maxsize=65536)
def profile_of_roots(gt: Graft, w: Weighting, roots: VertexSet) -> DistanceProfile:
    """Distances min over r in roots of dist(r, x), from F-shortest paths."""
    if not roots:
        raise ValueError("a profile needs at least one root")
    dist = [
        min(distance(gt, w, r, x) for r in members(roots))
        for x in range(gt.vertex_count)
    ]
    return DistanceProfile(roots=roots, dist=tuple(dist))


def profile(gt: Graft, w: Weighting, root: int) -> DistanceProfile:
    return profile_of_roots(gt, w, 1 << root)


def distance_components(
    prof: DistanceProfile, g: Union[Graft, Multigraph]
) -> DistanceComponentFamily:
    """Components of G[layle_i] for min level <= i <= max level."""
    graph = g.graph if isinstance(g, Graft) else g
    found = []
    for index in range(prof.min_level, prof.max_level + 1):
        for vertices in connected_components(graph, prof.layle(index)):
            capital = bool(vertices & prof.roots)
            found.append(DistanceComponent(index, vertices, capital))
    return DistanceComponentFamily(roots=prof.roots, components=tuple(found))


def trisection_of(
    prof: DistanceProfile, family: DistanceComponentFamily, g: Union[Graft, Multigraph]
) -> Trisection:
    graph = g.graph if isinstance(g, Graft) else g
    initial = family.capital_at(0)
    a = initial & prof.level(0)
    d = initial & ~a
    return Trisection(
        roots=prof.roots, initial=initial, a=a, d=d, c=graph.all_vertices & ~initial
    )


def trisection_of_roots(gt: Graft, w: Weighting, roots: VertexSet) -> Trisection:
    prof = profile_of_roots(gt, w, roots)
    return trisection_of(prof, distance_components(prof, gt), gt)


def trisection(gt: Graft, w: Weighting, root: int) -> Trisection:
    return trisection_of_roots(gt, w, 1 << root)


def entry_vertex(gt: Graft, w: Weighting, component: VertexSet) -> int:
    """The end inside K of the single F-edge leaving a non-capital component K."""
    leaving = members(cut(gt.graph, component) & w.join_edges)
    if len(leaving) != 1:
        raise StructureViolation(
            f"component {members(component)} is left by {len(leaving)} join edges",
            {"component": members(component), "join": members(w.join_edges)},
        )
    u, v = gt.graph.ends(leaving[0])
    return u if (component >> u) & 1 else v


def is_extreme(gt: Graft, x: VertexSet) -> bool:
    """Pairwise nonnegative distances inside x."""
    index = members(x)
    table = distance_matrix(gt)
    return bool((table[np.ix_(index, index)] >= 0).all())


def is_extreme_literal(gt: Graft) -> bool:
    """Nonnegative distances over every pair of V(G)."""
    return bool((distance_matrix(gt) >= 0).all())


def is_primal(gt: Graft, root: int) -> bool:
    return int(distance_matrix(gt)[root].max()) <= 0
