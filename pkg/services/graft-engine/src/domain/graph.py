"""Multigraph representation and primitive set operations.

Vertex sets and edge sets are plain ints used as bit vectors: bit ``i`` is
set when vertex (or edge) ``i`` belongs to the set.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .exceptions import NotBipartiteError, SizeCapError

MAX_VERTICES = 64
MAX_EDGES = 128

VertexSet = int
EdgeSet = int


def bits(indices: Iterable[int]) -> int:
    """Build a bit set from indices."""
    mask = 0
    for index in indices:
        mask |= 1 << index
    return mask


def members(mask: int) -> List[int]:
    """Indices of a bit set in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def lowest(mask: int) -> int:
    """Smallest index in a non-empty bit set."""
    if not mask:
        raise ValueError("empty set has no lowest member")
    return (mask & -mask).bit_length() - 1


def contains(mask: int, index: int) -> bool:
    return bool((mask >> index) & 1)


@dataclass(frozen=True)
class Edge:
    """Edge with a stable identifier."""

    edge_id: int
    u: int
    v: int

    def other(self, end: int) -> int:
        if end == self.u:
            return self.v
        if end == self.v:
            return self.u
        raise ValueError(f"vertex {end} is not an end of edge {self.edge_id}")


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on the dense vertex range 0..vertex_count-1."""

    vertex_count: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        if self.vertex_count > MAX_VERTICES:
            raise SizeCapError(
                f"{self.vertex_count} vertices exceed the cap of {MAX_VERTICES}"
            )
        if len(self.edges) > MAX_EDGES:
            raise SizeCapError(f"{len(self.edges)} edges exceed the cap of {MAX_EDGES}")
        for position, edge in enumerate(self.edges):
            if edge.edge_id != position:
                raise ValueError("edge ids must be dense and ordered")
            if edge.u == edge.v:
                raise ValueError(f"edge {edge.edge_id} is a self-loop")
            for end in (edge.u, edge.v):
                if not 0 <= end < self.vertex_count:
                    raise ValueError(f"edge {edge.edge_id} has unknown end {end}")

    @classmethod
    def from_pairs(
        cls, vertex_count: int, pairs: Sequence[Tuple[int, int]]
    ) -> "Multigraph":
        """Build a multigraph, numbering edges in the order given."""
        return cls(
            vertex_count=vertex_count,
            edges=tuple(Edge(index, u, v) for index, (u, v) in enumerate(pairs)),
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def all_vertices(self) -> VertexSet:
        return (1 << self.vertex_count) - 1

    @cached_property
    def all_edges(self) -> EdgeSet:
        return (1 << len(self.edges)) - 1

    @cached_property
    def adjacency(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """Per vertex, the (neighbor, edge_id) pairs in edge id order."""
        table: List[List[Tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for edge in self.edges:
            table[edge.u].append((edge.v, edge.edge_id))
            table[edge.v].append((edge.u, edge.edge_id))
        return tuple(tuple(row) for row in table)

    @cached_property
    def incidence(self) -> Tuple[EdgeSet, ...]:
        """Per vertex, the set of incident edges."""
        return tuple(bits(eid for _, eid in row) for row in self.adjacency)

    @cached_property
    def neighbor_masks(self) -> Tuple[VertexSet, ...]:
        return tuple(bits(w for w, _ in row) for row in self.adjacency)

    @cached_property
    def edge_ends(self) -> Tuple[VertexSet, ...]:
        """Per edge, the two-element set of its ends."""
        return tuple((1 << edge.u) | (1 << edge.v) for edge in self.edges)

    def ends(self, edge_id: int) -> Tuple[int, int]:
        edge = self.edges[edge_id]
        return edge.u, edge.v

    def induced_edges(self, window: VertexSet) -> EdgeSet:
        """Edges with both ends inside the window."""
        mask = 0
        for edge_id, ends in enumerate(self.edge_ends):
            if ends & window == ends:
                mask |= 1 << edge_id
        return mask


@dataclass(frozen=True)
class PathWitness:
    """Simple path as alternating vertex and edge sequences."""

    vertices: Tuple[int, ...]
    edge_ids: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("a path has at least one vertex")
        if len(self.edge_ids) != len(self.vertices) - 1:
            raise ValueError("a path alternates vertices and edges")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("a simple path repeats no vertex")

    @property
    def ends(self) -> Tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def vertex_set(self) -> VertexSet:
        return bits(self.vertices)

    @property
    def edge_set(self) -> EdgeSet:
        return bits(self.edge_ids)

    def reversed(self) -> "PathWitness":
        return PathWitness(self.vertices[::-1], self.edge_ids[::-1])

    def is_valid_in(self, graph: Multigraph) -> bool:
        for position, edge_id in enumerate(self.edge_ids):
            if not 0 <= edge_id < graph.edge_count:
                return False
            pair = {self.vertices[position], self.vertices[position + 1]}
            if pair != set(graph.ends(edge_id)):
                return False
        return all(0 <= v < graph.vertex_count for v in self.vertices)

    def subpath(self, x: int, y: int) -> "PathWitness":
        """The subpath xPy, oriented from x to y."""
        i, j = self.vertices.index(x), self.vertices.index(y)
        if i <= j:
            return PathWitness(self.vertices[i:j + 1], self.edge_ids[i:j])
        return PathWitness(self.vertices[j:i + 1], self.edge_ids[j:i]).reversed()


def reach(
    graph: Multigraph,
    seeds: VertexSet,
    within: Optional[VertexSet] = None,
    edge_window: Optional[EdgeSet] = None,
) -> VertexSet:
    """Vertices reachable from the seeds inside a vertex and edge window."""
    window = graph.all_vertices if within is None else within
    seen = seeds & window
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        v = low.bit_length() - 1
        if edge_window is None:
            step = graph.neighbor_masks[v]
        else:
            step = 0
            for w, edge_id in graph.adjacency[v]:
                if (edge_window >> edge_id) & 1:
                    step |= 1 << w
        fresh = step & window & ~seen
        seen |= fresh
        frontier |= fresh
    return seen


def connected_components(
    graph: Multigraph,
    restrict: Optional[VertexSet] = None,
    edge_window: Optional[EdgeSet] = None,
) -> List[VertexSet]:
    """Components of G[restrict], ordered by their minimum vertex."""
    remaining = graph.all_vertices if restrict is None else restrict
    window = remaining
    components = []
    while remaining:
        start = remaining & -remaining
        component = reach(graph, start, window, edge_window)
        components.append(component)
        remaining &= ~component
    return components


def is_connected(graph: Multigraph) -> bool:
    return len(connected_components(graph)) <= 1


def cut(graph: Multigraph, x: VertexSet) -> EdgeSet:
    """Edges with exactly one end in x."""
    mask = 0
    for edge in graph.edges:
        if ((x >> edge.u) & 1) != ((x >> edge.v) & 1):
            mask |= 1 << edge.edge_id
    return mask


def neighbors(graph: Multigraph, x: VertexSet) -> VertexSet:
    """Vertices outside x adjacent to some vertex of x."""
    found = 0
    for v in members(x):
        found |= graph.neighbor_masks[v]
    return found & ~x


def bipartition(graph: Multigraph) -> Tuple[VertexSet, VertexSet]:
    """Color classes (A, B); each component's minimum vertex lands in A."""
    color = [-1] * graph.vertex_count
    for start in range(graph.vertex_count):
        if color[start] != -1:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w, edge_id in graph.adjacency[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    raise NotBipartiteError(
                        f"edge {edge_id} closes an odd circuit at vertex {w}"
                    )
    side_a = bits(v for v in range(graph.vertex_count) if color[v] == 0)
    return side_a, graph.all_vertices & ~side_a


def is_bipartite(graph: Multigraph) -> bool:
    try:
        bipartition(graph)
    except NotBipartiteError:
        return False
    return True


def is_round_ear_path(graph: Multigraph, path: PathWitness, x: VertexSet) -> bool:
    """Whether the path meets x exactly at its two distinct ends."""
    if not path.is_valid_in(graph):
        raise ValueError("path does not belong to the graph")
    first, last = path.ends
    if first == last:
        return False
    return path.vertex_set & x == (1 << first) | (1 << last)


def odd_vertices(graph: Multigraph, edge_set: EdgeSet) -> VertexSet:
    """Vertices meeting an odd number of edges of the set."""
    odd = 0
    for edge_id in members(edge_set):
        odd ^= graph.edge_ends[edge_id]
    return odd


def induced(
    graph: Multigraph, window: VertexSet
) -> Tuple[Multigraph, Tuple[int, ...], Tuple[int, ...]]:
    """G[window] re-indexed densely, with host vertex and edge orders."""
    vertex_order = tuple(members(window))
    local = {v: index for index, v in enumerate(vertex_order)}
    edge_order = tuple(members(graph.induced_edges(window)))
    pairs = [
        (local[graph.edges[eid].u], local[graph.edges[eid].v]) for eid in edge_order
    ]
    return Multigraph.from_pairs(len(vertex_order), pairs), vertex_order, edge_order


def simple_paths(
    graph: Multigraph,
    source: int,
    target: Optional[int] = None,
    within: Optional[VertexSet] = None,
    edge_window: Optional[EdgeSet] = None,
    stop: VertexSet = 0,
) -> Iterator[PathWitness]:
    """Enumerate simple paths from source inside the windows.

    With a target only paths ending there are produced; otherwise every path
    of at least one edge. Paths are never extended past a vertex of ``stop``.
    """
    window = graph.all_vertices if within is None else within
    if not (window >> source) & 1:
        return
    if target == source:
        yield PathWitness((source,), ())
        return
    vertices = [source]
    edge_ids: List[int] = []

    def extend(v: int, visited: int) -> Iterator[PathWitness]:
        for w, edge_id in graph.adjacency[v]:
            if (visited >> w) & 1 or not (window >> w) & 1:
                continue
            if edge_window is not None and not (edge_window >> edge_id) & 1:
                continue
            vertices.append(w)
            edge_ids.append(edge_id)
            if target is None or w == target:
                yield PathWitness(tuple(vertices), tuple(edge_ids))
            if w != target and not (stop >> w) & 1:
                yield from extend(w, visited | (1 << w))
            vertices.pop()
            edge_ids.pop()

    yield from extend(source, 1 << source)


def circuits(graph: Multigraph) -> List[EdgeSet]:
    """Every circuit once, anchored at its minimum edge id."""
    found = []
    for edge in graph.edges:
        higher = graph.all_edges & ~((1 << (edge.edge_id + 1)) - 1)
        for path in simple_paths(graph, edge.v, edge.u, edge_window=higher):
            found.append(path.edge_set | (1 << edge.edge_id))
    return found


def round_ear_paths(graph: Multigraph, x: VertexSet) -> List[PathWitness]:
    """Every round ear path relative to x, oriented from the smaller bond."""
    ears = []
    for bond in members(x):
        for path in simple_paths(graph, bond, stop=x):
            last = path.vertices[-1]
            if (x >> last) & 1 and last > bond:
                ears.append(path)
    return ears
