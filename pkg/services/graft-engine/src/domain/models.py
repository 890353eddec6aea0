"""Domain models for the graft engine."""

import hashlib
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Tuple

from .exceptions import DisconnectedError, ParityError, StructureViolation
from .graph import (
    EdgeSet,
    Multigraph,
    VertexSet,
    bits,
    connected_components,
    induced,
    lowest,
    members,
)


@dataclass(frozen=True)
class Graft:
    """A multigraph with a terminal set of even size on every component."""

    graph: Multigraph
    terminals: VertexSet = 0
    allow_disconnected: bool = False

    def __post_init__(self) -> None:
        if self.terminals & ~self.graph.all_vertices:
            raise ValueError("terminals must be vertices of the graph")
        for component in self.components:
            if bin(self.terminals & component).count("1") % 2:
                raise ParityError(
                    f"component {members(component)} holds an odd number of terminals"
                )
        if not self.allow_disconnected and len(self.components) > 1:
            raise DisconnectedError(
                f"graph has {len(self.components)} connected components"
            )

    @cached_property
    def components(self) -> Tuple[VertexSet, ...]:
        return tuple(connected_components(self.graph))

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    @property
    def all_vertices(self) -> VertexSet:
        return self.graph.all_vertices

    def with_terminals(self, terminals: VertexSet) -> "Graft":
        return Graft(self.graph, terminals, self.allow_disconnected)

    def toggled(self, u: int, v: int) -> "Graft":
        """The graft with terminal set T Δ {u, v}."""
        if u == v:
            return self
        return self.with_terminals(self.terminals ^ (1 << u) ^ (1 << v))

    def digest(self) -> str:
        """Stable short digest identifying the instance in reports."""
        pairs = ";".join(f"{e.u}-{e.v}" for e in self.graph.edges)
        text = f"{self.vertex_count}|{pairs}|{self.terminals:x}"
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class JoinCertificate:
    """An edge set F with its size and minimality flag."""

    edges: EdgeSet
    size: int
    minimal: bool = False

    def __post_init__(self) -> None:
        if bin(self.edges).count("1") != self.size:
            raise ValueError("certificate size does not match its edge set")

    @property
    def edge_ids(self) -> List[int]:
        return members(self.edges)


@dataclass(frozen=True)
class Weighting:
    """The ±1 weighting induced by a join: -1 exactly on F."""

    join_edges: EdgeSet

    def weight(self, edge_id: int) -> int:
        return -1 if (self.join_edges >> edge_id) & 1 else 1

    def weight_of(self, edges: EdgeSet) -> int:
        inside = bin(edges & self.join_edges).count("1")
        return bin(edges).count("1") - 2 * inside


@dataclass(frozen=True)
class SubgraftView:
    """The subgraft (G[X], Y) determined by a join F of the host."""

    host: Graft
    join_edges: EdgeSet
    vertex_window: VertexSet
    induced_terminals: VertexSet

    @cached_property
    def _induced(self) -> Tuple[Multigraph, Tuple[int, ...], Tuple[int, ...]]:
        return induced(self.host.graph, self.vertex_window)

    @property
    def vertex_order(self) -> Tuple[int, ...]:
        return self._induced[1]

    @property
    def edge_order(self) -> Tuple[int, ...]:
        return self._induced[2]

    @cached_property
    def as_graft(self) -> Graft:
        graph, vertex_order, _ = self._induced
        terminals = self.induced_terminals
        local = bits(i for i, v in enumerate(vertex_order) if (terminals >> v) & 1)
        return Graft(graph, local, allow_disconnected=True)

    @cached_property
    def local_join(self) -> EdgeSet:
        """F ∩ E(G[X]) in the subgraft's edge numbering."""
        order = self.edge_order
        return bits(i for i, eid in enumerate(order) if (self.join_edges >> eid) & 1)

    def to_local(self, vertex: int) -> int:
        return self.vertex_order.index(vertex)

    def to_host(self, vertex: int) -> int:
        return self.vertex_order[vertex]

    def host_vertices(self, local_set: VertexSet) -> VertexSet:
        return bits(self.vertex_order[i] for i in members(local_set))


@dataclass(frozen=True)
class DistanceProfile:
    """F-distances from a root set, with level and layer sets.

    ``dist[x]`` is the minimum over the roots of the F-distance to x.
    """

    roots: VertexSet
    dist: Tuple[int, ...]

    @property
    def root(self) -> int:
        if self.roots & (self.roots - 1):
            raise ValueError("profile has more than one root")
        return lowest(self.roots)

    @property
    def min_level(self) -> int:
        return min(self.dist)

    @property
    def max_level(self) -> int:
        return max(self.dist)

    @cached_property
    def levels(self) -> Dict[int, VertexSet]:
        table: Dict[int, VertexSet] = {}
        for vertex, value in enumerate(self.dist):
            table[value] = table.get(value, 0) | (1 << vertex)
        return dict(sorted(table.items()))

    def level(self, index: int) -> VertexSet:
        return self.levels.get(index, 0)

    def lay(self, index: int) -> VertexSet:
        """Vertices at distance strictly below the index."""
        return bits(v for v, value in enumerate(self.dist) if value < index)

    def layle(self, index: int) -> VertexSet:
        """Vertices at distance at most the index."""
        return bits(v for v, value in enumerate(self.dist) if value <= index)


@dataclass(frozen=True)
class DistanceComponent:
    index: int
    vertices: VertexSet
    capital: bool


@dataclass(frozen=True)
class DistanceComponentFamily:
    """Components of G[layle_i] for every realized index i."""

    roots: VertexSet
    components: Tuple[DistanceComponent, ...]

    @property
    def indices(self) -> List[int]:
        return sorted({c.index for c in self.components})

    def at(self, index: int) -> List[DistanceComponent]:
        return [c for c in self.components if c.index == index]

    def capital_at(self, index: int) -> VertexSet:
        """Union of the capital components at the index (0 when none)."""
        found = 0
        for component in self.at(index):
            if component.capital:
                found |= component.vertices
        return found

    def containing(self, index: int, vertex: int) -> Optional[DistanceComponent]:
        for component in self.at(index):
            if (component.vertices >> vertex) & 1:
                return component
        return None


@dataclass(frozen=True)
class Trisection:
    """The A/D/C split of V(G) around the initial component."""

    roots: VertexSet
    initial: VertexSet
    a: VertexSet
    d: VertexSet
    c: VertexSet

    def __post_init__(self) -> None:
        if self.a & self.d or self.a & self.c or self.d & self.c:
            raise ValueError("trisection parts must be disjoint")
        if self.a | self.d != self.initial:
            raise ValueError("A and D must cover the initial component")


@dataclass(frozen=True)
class RootSetProfile:
    """Distances from an extreme root set with its initial subgraph."""

    profile: DistanceProfile
    family: DistanceComponentFamily
    trisection: Trisection

    @property
    def roots(self) -> VertexSet:
        return self.profile.roots

    @property
    def dist(self) -> Tuple[int, ...]:
        return self.profile.dist

    @property
    def initial(self) -> VertexSet:
        return self.trisection.initial

    @property
    def a(self) -> VertexSet:
        return self.trisection.a

    @property
    def d(self) -> VertexSet:
        return self.trisection.d

    @property
    def c(self) -> VertexSet:
        return self.trisection.c


@dataclass(frozen=True)
class KLPartition:
    """Equivalence classes of the general Kotzig-Lovász relation."""

    classes: Tuple[VertexSet, ...]
    factor_components: Tuple[VertexSet, ...]

    def class_of(self, vertex: int) -> VertexSet:
        for klass in self.classes:
            if (klass >> vertex) & 1:
                return klass
        raise KeyError(vertex)

    def factor_component_of(self, vertex: int) -> VertexSet:
        for component in self.factor_components:
            if (component >> vertex) & 1:
                return component
        raise KeyError(vertex)

    def classes_within(self, window: VertexSet) -> List[VertexSet]:
        return [klass for klass in self.classes if klass & window == klass]


@dataclass(frozen=True)
class CriticalEntry:
    """A class S with its neighboring D-components and critical set."""

    klass: VertexSet
    neicomp: Tuple[VertexSet, ...]
    critical: VertexSet


@dataclass(frozen=True)
class CriticalAtlas:
    roots: VertexSet
    entries: Tuple[CriticalEntry, ...]

    def entry_for(self, klass: VertexSet) -> CriticalEntry:
        for entry in self.entries:
            if entry.klass == klass:
                return entry
        raise KeyError(klass)


@dataclass(frozen=True)
class InitialStructure:
    """A_R split into classes and D_R split into their critical sets."""

    roots: VertexSet
    trisection: Trisection
    atlas: CriticalAtlas

    @property
    def classes(self) -> List[VertexSet]:
        return [entry.klass for entry in self.atlas.entries]

    @property
    def k(self) -> int:
        return len(self.atlas.entries)


@dataclass(frozen=True)
class HeterogeneousStructure:
    """Initial structure of a root set split along the color classes.

    ``combined`` joins the structures of the two one-sided root sets.
    ``min_distance_split`` tells whether A and D taken from the distances
    min over all roots agree with that union.
    """

    roots: VertexSet
    combined: InitialStructure
    side_a: Optional[InitialStructure]
    side_b: Optional[InitialStructure]
    bi_extreme: bool
    min_distance_split: bool = True


@dataclass(frozen=True)
class Rootlization:
    """A graft extended by a root r and an attachment s over a mount X.

    Base edge ids are kept; ``rs`` comes next, then one edge s-x per mount
    vertex in ascending vertex order.
    """

    base: Graft
    mount: VertexSet
    extended: Graft
    root: int
    attachment: int
    rs_edge: int
    mount_edges: Tuple[Tuple[int, int], ...]

    def lift(self, join_edges: EdgeSet) -> EdgeSet:
        return join_edges | (1 << self.rs_edge)

    def restrict(self, extended_edges: EdgeSet) -> EdgeSet:
        return extended_edges & self.base.graph.all_edges

    @property
    def gadget_edges(self) -> EdgeSet:
        return self.extended.graph.all_edges & ~self.base.graph.all_edges

    @property
    def mount_edge_set(self) -> EdgeSet:
        return bits(edge_id for _, edge_id in self.mount_edges)


@dataclass(frozen=True)
class StatementVerdict:
    label: str
    passed: bool
    witness: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class VerdictReport:
    """A list of statement verdicts with a fail-fast accessor."""

    verdicts: Tuple[StatementVerdict, ...]

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failures(self) -> List[StatementVerdict]:
        return [v for v in self.verdicts if not v.passed]

    def raise_for_failures(self) -> None:
        failures = self.failures
        if failures:
            first = failures[0]
            raise StructureViolation(
                f"{first.label} failed", {"label": first.label, **first.witness}
            )


@dataclass(frozen=True)
class MonotonicityReport(VerdictReport):
    roots: VertexSet = 0


@dataclass(frozen=True)
class RootlizationJoinReport(VerdictReport):
    base_nu: int = 0
    extended_nu: int = 0
    base_joins: Tuple[EdgeSet, ...] = ()
    extended_joins: Tuple[EdgeSet, ...] = ()


@dataclass(frozen=True)
class CapitalStep:
    """One level of the capital chain: K at i grows into L at i+1."""

    index: int
    capital: VertexSet
    frontier: VertexSet
    next_capital: VertexSet
    a_frontier: VertexSet
    d_frontier: VertexSet
    classes: Tuple[VertexSet, ...] = ()


@dataclass(frozen=True)
class CapitalChain:
    root: int
    steps: Tuple[CapitalStep, ...]


class JoinSolver(ABC):
    """Strategy computing ν and a minimum join on a spanning subgraph."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the solver name."""
        pass

    @abstractmethod
    def nu(
        self,
        graph: Multigraph,
        terminals: VertexSet,
        edge_window: Optional[EdgeSet] = None,
    ) -> int:
        """Size of a minimum join using only edges of the window.

        Raises InfeasibleError when some component of the window holds an odd
        number of terminals.
        """
        pass

    @abstractmethod
    def find_join(
        self,
        graph: Multigraph,
        terminals: VertexSet,
        edge_window: Optional[EdgeSet] = None,
    ) -> EdgeSet:
        """Some minimum join inside the window."""
        pass
