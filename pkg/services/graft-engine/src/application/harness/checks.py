"""Registry of structural checks run against a single graft.

Each check raises StructureViolation with a replayable witness when the
claimed structure fails on the instance. Checks that enumerate paths, joins
or negative sets raise SizeCapError above their caps and are reported as
skipped by the runner.
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any, Callable, Dict, Iterator, List, NoReturn, Optional, Tuple

import numpy as np
import structlog

from ...domain.exceptions import GraftError, SizeCapError, StructureViolation
from ...domain.graph import (
    EdgeSet,
    VertexSet,
    bipartition,
    bits,
    circuits,
    connected_components,
    cut,
    is_bipartite,
    lowest,
    members,
    neighbors,
    odd_vertices,
    round_ear_paths,
    simple_paths,
)
from ...domain.models import (
    DistanceComponentFamily,
    DistanceProfile,
    Graft,
    KLPartition,
    Weighting,
)
from ...infrastructure.config import MAX_MOUNT_SIZE, PATH_VERTEX_CAP
from ..decomposition import (
    critical_set,
    icomp_structure,
    kl_classes,
    kl_related,
    negative_set_bruteforce,
    neicomp_of_roots,
)
from ..distance import (
    all_shortest_paths,
    distance_bruteforce,
    distance_components,
    distance_literal,
    distance_matrix,
    distance_via_nu,
    distance_with_path,
    entry_vertex,
    is_extreme,
    is_primal,
    profile,
    profile_of_roots,
    trisection,
    trisection_of_roots,
)
from ..join_solver import (
    allowed_edges,
    factor_components,
    get_solver,
    is_join,
    is_minimum,
    min_join,
    negative_circuit,
    nu,
    nu_bruteforce,
    subgraft,
)
from ..rootlize import (
    extended_min_joins,
    heterogeneous_structure,
    homogeneous_structure,
    monotonicity_checks,
    rootlize,
)
from .capital import capital_chain

logger = structlog.get_logger(__name__)


@dataclass
class CheckContext:
    """Per-instance cache shared by every check run on one graft."""

    graft: Graft
    literal_sign: bool = False
    max_mount_size: int = MAX_MOUNT_SIZE
    diagnostics: Dict[str, int] = field(default_factory=dict)
    _families: Dict[int, Tuple[DistanceProfile, DistanceComponentFamily]] = field(
        default_factory=dict, repr=False
    )

    @cached_property
    def bipartite(self) -> bool:
        return is_bipartite(self.graft.graph)

    @cached_property
    def colors(self) -> Tuple[VertexSet, VertexSet]:
        return bipartition(self.graft.graph)

    @cached_property
    def bruteforce(self) -> Tuple[int, List[EdgeSet]]:
        return nu_bruteforce(self.graft)

    @property
    def minimum_joins(self) -> List[EdgeSet]:
        return self.bruteforce[1]

    @cached_property
    def weightings(self) -> List[Weighting]:
        return [Weighting(f) for f in self.minimum_joins]

    @cached_property
    def weighting(self) -> Weighting:
        return Weighting(min_join(self.graft).edges)

    @cached_property
    def table(self) -> np.ndarray:
        return distance_matrix(self.graft)

    @cached_property
    def partition(self) -> KLPartition:
        return kl_classes(self.graft)

    @cached_property
    def allowed(self) -> EdgeSet:
        return allowed_edges(self.graft)

    @property
    def roots(self) -> range:
        return range(self.graft.vertex_count)

    def family(self, root: int) -> Tuple[DistanceProfile, DistanceComponentFamily]:
        if root not in self._families:
            prof = profile(self.graft, self.weighting, root)
            self._families[root] = (prof, distance_components(prof, self.graft))
        return self._families[root]

    def require_path_cap(self, vertex_count: Optional[int] = None) -> None:
        count = self.graft.vertex_count if vertex_count is None else vertex_count
        if count > PATH_VERTEX_CAP:
            raise SizeCapError(
                f"{count} vertices exceed the path enumeration cap of {PATH_VERTEX_CAP}"
            )

    @cached_property
    def _mounts(self) -> List[Tuple[VertexSet, bool]]:
        side_a, _ = self.colors if self.bipartite else (self.graft.all_vertices, 0)
        n = self.graft.vertex_count
        found = []
        for size in range(1, min(self.max_mount_size, n) + 1):
            for chosen in combinations(range(n), size):
                mount = bits(chosen)
                if is_extreme(self.graft, mount):
                    found.append((mount, not mount & side_a or mount & side_a == mount))
        return found

    def extreme_mounts(self, homogeneous: Optional[bool] = None) -> Iterator[VertexSet]:
        """Extreme vertex sets up to the mount size cap, smallest first.

        With ``homogeneous`` True only sets inside one color class are
        produced, with False only sets meeting both.
        """
        for mount, one_side in self._mounts:
            if homogeneous is None or one_side == homogeneous:
                yield mount

    def note(self, key: str) -> None:
        self.diagnostics[key] = self.diagnostics.get(key, 0) + 1


@dataclass(frozen=True)
class CheckDefinition:
    check_id: str
    statement: str
    run: Callable[[CheckContext], None]
    bipartite_only: bool = False


class CheckRegistry:
    """Named checks kept in registration order."""

    def __init__(self) -> None:
        self.checks: Dict[str, CheckDefinition] = {}

    def register(
        self, check_id: str, statement: str, bipartite_only: bool = False
    ) -> Callable[[Callable[[CheckContext], None]], Callable[[CheckContext], None]]:
        def decorator(
            func: Callable[[CheckContext], None],
        ) -> Callable[[CheckContext], None]:
            definition = CheckDefinition(check_id, statement, func, bipartite_only)
            self.checks[check_id] = definition
            return func

        return decorator

    def get(self, check_id: str) -> CheckDefinition:
        try:
            return self.checks[check_id]
        except KeyError:
            raise ValueError(f"unknown check id: {check_id}") from None

    @property
    def ids(self) -> List[str]:
        return list(self.checks)


registry = CheckRegistry()


def _fail(message: str, **witness: Any) -> NoReturn:
    raise StructureViolation(message, witness)


def _sets(masks: List[int]) -> List[List[int]]:
    return [members(m) for m in masks]


# --- joins and weights ---


@registry.register(
    "fact1-sign", "dist(x,y) = ν(T Δ {x,y}) - ν(T) against path enumeration"
)
def check_fact1_sign(ctx: CheckContext) -> None:
    ctx.require_path_cap()
    gt, w = ctx.graft, ctx.weighting
    via = distance_literal if ctx.literal_sign else distance_via_nu
    for u, v in combinations(ctx.roots, 2):
        by_paths = distance_bruteforce(gt, w, u, v)
        by_nu = via(gt, u, v)
        if by_paths != by_nu:
            _fail(
                "nu difference disagrees with the path weight",
                u=u,
                v=v,
                nu_difference=by_nu,
                path_distance=by_paths,
                join=members(w.join_edges),
                literal_sign=ctx.literal_sign,
            )


@registry.register(
    "circuit-flip", "F Δ C is a minimum join for a zero-weight circuit C"
)
def check_circuit_flip(ctx: CheckContext) -> None:
    joins = set(ctx.minimum_joins)
    for f, w in zip(ctx.minimum_joins, ctx.weightings):
        for circuit in circuits(ctx.graft.graph):
            if w.weight_of(circuit) != 0:
                continue
            if f ^ circuit not in joins:
                _fail(
                    "flipped join is not minimum",
                    join=members(f),
                    circuit=members(circuit),
                )
            if circuit & ~ctx.allowed:
                _fail(
                    "zero-weight circuit uses a non-allowed edge",
                    join=members(f),
                    circuit=members(circuit),
                )


@registry.register("conservative", "F is minimum iff no circuit has negative F-weight")
def check_conservative(ctx: CheckContext) -> None:
    gt = ctx.graft
    for f, w in zip(ctx.minimum_joins, ctx.weightings):
        for circuit in circuits(gt.graph):
            weight = w.weight_of(circuit)
            if weight < 0:
                _fail(
                    "minimum join with a negative circuit",
                    join=members(f),
                    circuit=members(circuit),
                )
            if weight > 0:
                larger = f ^ circuit
                found = negative_circuit(gt, larger)
                if found is None or Weighting(larger).weight_of(found) >= 0:
                    _fail(
                        "larger join without a negative circuit",
                        join=members(larger),
                        circuit=members(found or 0),
                    )
        if not is_minimum(gt, f):
            _fail("brute-force minimum join rejected", join=members(f))


@registry.register("fc-nonpos", "factor-connected grafts have dist(x,y) <= 0")
def check_fc_nonpos(ctx: CheckContext) -> None:
    if len(factor_components(ctx.graft)) != 1:
        return
    if int(ctx.table.max()) > 0:
        flat = int(ctx.table.argmax())
        x, y = (int(i) for i in np.unravel_index(flat, ctx.table.shape))
        _fail(
            "positive distance in a factor-connected graft",
            x=x,
            y=y,
            distance=int(ctx.table[x, y]),
        )


@registry.register(
    "oracle-nu", "pairing ν and lexicographic join agree with exhaustive search"
)
def check_oracle_nu(ctx: CheckContext) -> None:
    brute_nu, joins = ctx.bruteforce
    certificate = min_join(ctx.graft)
    if nu(ctx.graft) != brute_nu or certificate.size != brute_nu:
        _fail(
            "nu disagrees with the exhaustive search",
            pairing_nu=nu(ctx.graft),
            join_size=certificate.size,
            bruteforce_nu=brute_nu,
            solver=get_solver().name,
        )
    if certificate.edges != joins[0]:
        _fail(
            "minimum join is not the lexicographically smallest",
            join=certificate.edge_ids,
            smallest=members(joins[0]),
        )


@registry.register("oracle-allowed", "allowed edges are the union of all minimum joins")
def check_oracle_allowed(ctx: CheckContext) -> None:
    union = 0
    for f in ctx.minimum_joins:
        union |= f
    if union != ctx.allowed:
        _fail(
            "allowed edges differ from the join union",
            allowed=members(ctx.allowed),
            union=members(union),
        )


@registry.register("sym-diff", "two minimum joins differ by a join of (G, ∅)")
def check_sym_diff(ctx: CheckContext) -> None:
    empty = ctx.graft.with_terminals(0)
    for f, g in combinations(ctx.minimum_joins, 2):
        if odd_vertices(ctx.graft.graph, f ^ g) or not is_join(empty, f ^ g):
            _fail(
                "symmetric difference has odd vertices",
                joins=[members(f), members(g)],
            )


@registry.register("subgraft-parity", "(G,T)_F[X] is a graft for every window X")
def check_subgraft_parity(ctx: CheckContext) -> None:
    ctx.require_path_cap()
    gt, f = ctx.graft, ctx.weighting.join_edges
    for window in range(1, 1 << gt.vertex_count):
        try:
            view = subgraft(gt, f, window)
        except GraftError as exc:
            _fail(
                "subgraft violates parity",
                window=members(window),
                join=members(f),
                error=str(exc),
            )
        if window == gt.all_vertices and view.induced_terminals != gt.terminals:
            _fail(
                "whole-graph subgraft changed the terminals",
                terminals=members(view.induced_terminals),
            )


# --- distances ---


@registry.register(
    "oracle-dist", "path distance, ν difference and path enumeration agree"
)
def check_oracle_dist(ctx: CheckContext) -> None:
    ctx.require_path_cap()
    gt, w = ctx.graft, ctx.weighting
    for u, v in combinations(ctx.roots, 2):
        weight, path = distance_with_path(gt, w, u, v)
        if not path.is_valid_in(gt.graph) or path.ends != (u, v):
            _fail(
                "shortest path witness is malformed",
                u=u,
                v=v,
                path=list(path.vertices),
            )
        by_nu = distance_via_nu(gt, u, v)
        by_paths = distance_bruteforce(gt, w, u, v)
        if not weight == by_nu == by_paths:
            _fail(
                "distance oracles disagree",
                u=u,
                v=v,
                path_distance=weight,
                nu_difference=by_nu,
                enumerated=by_paths,
                join=members(w.join_edges),
            )


@registry.register("join-indep", "distance profiles do not depend on the minimum join")
def check_join_indep(ctx: CheckContext) -> None:
    for root in ctx.roots:
        reference = profile(ctx.graft, ctx.weightings[0], root).dist
        for w in ctx.weightings[1:]:
            other = profile(ctx.graft, w, root).dist
            if other != reference:
                _fail(
                    "profile changes with the join",
                    root=root,
                    join=members(w.join_edges),
                    reference=list(reference),
                    other=list(other),
                )


@registry.register(
    "adj-step", "adjacent vertices differ by exactly one in distance", True
)
def check_adj_step(ctx: CheckContext) -> None:
    for root in ctx.roots:
        for edge in ctx.graft.graph.edges:
            step = abs(int(ctx.table[root, edge.u]) - int(ctx.table[root, edge.v]))
            if step != 1:
                _fail("edge step is not one", root=root, edge=edge.edge_id, step=step)


@registry.register(
    "cut-parity",
    "non-capital components are left by one F-edge, capital ones by none",
    True,
)
def check_cut_parity(ctx: CheckContext) -> None:
    graph = ctx.graft.graph
    for root in ctx.roots:
        _, family = ctx.family(root)
        for w in ctx.weightings:
            for component in family.components:
                leaving = bin(cut(graph, component.vertices) & w.join_edges).count("1")
                if leaving != (0 if component.capital else 1):
                    _fail(
                        "join edges leaving a distance component",
                        root=root,
                        index=component.index,
                        component=members(component.vertices),
                        capital=component.capital,
                        leaving=leaving,
                        join=members(w.join_edges),
                    )


def _path_cut_case(
    inside_root: bool, inside_x: bool, crossing: int, crossing_join: int
) -> bool:
    if inside_root and inside_x:
        return crossing == 0
    if inside_root != inside_x:
        # no join edge leaves the capital component, one enters every other
        return crossing == 1 and crossing_join == (0 if inside_root else 1)
    return crossing == 0 or (crossing == 2 and crossing_join == 1)


@registry.register(
    "path-cut", "shortest root paths cross distance components as classified", True
)
def check_path_cut(ctx: CheckContext) -> None:
    ctx.require_path_cap()
    gt = ctx.graft
    for root in ctx.roots:
        _, family = ctx.family(root)
        for w in ctx.weightings:
            for x in ctx.roots:
                for path in all_shortest_paths(gt, w, root, x):
                    for component in family.components:
                        boundary = cut(gt.graph, component.vertices) & path.edge_set
                        crossing = bin(boundary).count("1")
                        crossing_join = bin(boundary & w.join_edges).count("1")
                        inside_root = bool((component.vertices >> root) & 1)
                        inside_x = bool((component.vertices >> x) & 1)
                        case = (inside_root, inside_x, crossing, crossing_join)
                        if not _path_cut_case(*case):
                            _fail(
                                "shortest path crosses a component unexpectedly",
                                root=root,
                                x=x,
                                path=list(path.vertices),
                                component=members(component.vertices),
                                index=component.index,
                                join=members(w.join_edges),
                            )


@registry.register(
    "primal-sub",
    "the subgraft of a non-capital component is primal at its entry vertex",
    True,
)
def check_primal_sub(ctx: CheckContext) -> None:
    gt = ctx.graft
    for root in ctx.roots:
        prof, family = ctx.family(root)
        for w in ctx.weightings:
            for component in family.components:
                if component.capital:
                    continue
                entry = entry_vertex(gt, w, component.vertices)
                view = subgraft(gt, w.join_edges, component.vertices)
                local = view.as_graft
                witness = {
                    "root": root,
                    "component": members(component.vertices),
                    "entry": entry,
                    "join": members(w.join_edges),
                }
                restricted = view.local_join
                if not is_join(local, restricted) or not is_minimum(local, restricted):
                    _fail("restricted join is not minimum in the subgraft", **witness)
                local_entry = view.to_local(entry)
                local_table = distance_matrix(local)
                for x in members(component.vertices):
                    local_distance = int(local_table[local_entry, view.to_local(x)])
                    expected = prof.dist[entry] + local_distance
                    if prof.dist[x] != expected:
                        _fail(
                            "distance does not split at the entry vertex",
                            x=x,
                            **witness,
                        )
                if not is_primal(local, local_entry):
                    _fail("subgraft is not primal at the entry vertex", **witness)


@registry.register(
    "level-extreme", "top levels of distance components are extreme", True
)
def check_level_extreme(ctx: CheckContext) -> None:
    gt = ctx.graft
    for root in ctx.roots:
        prof, family = ctx.family(root)
        for component in family.components:
            top = component.vertices & prof.level(component.index)
            if not is_extreme(gt, top):
                _fail(
                    "component level is not extreme",
                    root=root,
                    index=component.index,
                    level=members(top),
                )
            for w in ctx.weightings:
                view = subgraft(gt, w.join_edges, component.vertices)
                local_top = bits(view.to_local(v) for v in members(top))
                if not is_extreme(view.as_graft, local_top):
                    _fail(
                        "component level is not extreme in its subgraft",
                        root=root,
                        index=component.index,
                        level=members(top),
                        join=members(w.join_edges),
                    )


def _ears(ctx: CheckContext, vertices: VertexSet) -> List[Any]:
    ears = round_ear_paths(ctx.graft.graph, vertices)
    return [p for p in ears if len(p.edge_ids) >= 2]


@registry.register(
    "ear-nonneg", "round ear paths of distance components weigh at least zero", True
)
def check_ear_nonneg(ctx: CheckContext) -> None:
    ctx.require_path_cap()
    for root in ctx.roots:
        _, family = ctx.family(root)
        for component in family.components:
            ears = _ears(ctx, component.vertices)
            for w in ctx.weightings:
                for ear in ears:
                    weight = w.weight_of(ear.edge_set)
                    witness = {
                        "root": root,
                        "component": members(component.vertices),
                        "ear": list(ear.vertices),
                        "join": members(w.join_edges),
                        "weight": weight,
                    }
                    if weight < 0:
                        _fail("negative round ear path", **witness)
                    if weight == 0:
                        if component.capital:
                            _fail(
                                "zero round ear path on a capital component", **witness
                            )
                        entered = entry_vertex(ctx.graft, w, component.vertices)
                        if entered not in ear.ends:
                            _fail(
                                "zero round ear path avoids the entry vertex", **witness
                            )


@registry.register(
    "ear-capital", "round ear paths of capital components weigh at least two", True
)
def check_ear_capital(ctx: CheckContext) -> None:
    ctx.require_path_cap()
    for root in ctx.roots:
        _, family = ctx.family(root)
        for component in family.components:
            if not component.capital:
                continue
            ears = _ears(ctx, component.vertices)
            for w in ctx.weightings:
                for ear in ears:
                    if w.weight_of(ear.edge_set) < 2:
                        _fail(
                            "light round ear path on a capital component",
                            root=root,
                            component=members(component.vertices),
                            ear=list(ear.vertices),
                            join=members(w.join_edges),
                        )


@registry.register("a-min", "dist(r,y) <= dist(x,y) for x in A_r", True)
def check_a_min(ctx: CheckContext) -> None:
    for root in ctx.roots:
        tri = trisection(ctx.graft, ctx.weighting, root)
        for x in members(tri.a):
            worse = np.nonzero(ctx.table[root] > ctx.table[x])[0]
            if worse.size:
                y = int(worse[0])
                _fail(
                    "vertex of A_r beats the root",
                    root=root,
                    x=x,
                    y=y,
                    from_root=int(ctx.table[root, y]),
                    from_x=int(ctx.table[x, y]),
                )


@registry.register(
    "nonallowed-one", "a non-allowed edge joins vertices at distance one", True
)
def check_nonallowed_one(ctx: CheckContext) -> None:
    for edge in ctx.graft.graph.edges:
        if (ctx.allowed >> edge.edge_id) & 1:
            continue
        if int(ctx.table[edge.u, edge.v]) != 1:
            _fail(
                "non-allowed edge at distance other than one",
                edge=edge.edge_id,
                distance=int(ctx.table[edge.u, edge.v]),
            )


# --- classes and critical sets ---


@registry.register("kl-equiv", "the class relation is an equivalence relation")
def check_kl_equiv(ctx: CheckContext) -> None:
    gt = ctx.graft
    n = gt.vertex_count
    related = [[kl_related(gt, u, v) for v in range(n)] for u in range(n)]
    for u in range(n):
        if not related[u][u]:
            _fail("relation is not reflexive", u=u)
        for v in range(n):
            if related[u][v] != related[v][u]:
                _fail("relation is not symmetric", u=u, v=v)
            for z in range(n):
                if related[u][v] and related[v][z] and not related[u][z]:
                    _fail("relation is not transitive", u=u, v=v, z=z)
    for klass in ctx.partition.classes:
        for u in members(klass):
            row = bits(v for v in range(n) if related[u][v])
            if row != klass:
                _fail(
                    "class differs from the related set",
                    u=u,
                    klass=members(klass),
                    related=members(row),
                )


@registry.register("unit-dist", "related vertices have identical distance rows", True)
def check_unit_dist(ctx: CheckContext) -> None:
    for klass in ctx.partition.classes:
        first = lowest(klass)
        for other in members(klass):
            if not np.array_equal(ctx.table[first], ctx.table[other]):
                _fail(
                    "related vertices see different distances",
                    x=first,
                    y=other,
                    klass=members(klass),
                )


@registry.register("root-partition", "the class of r lies in A_r", True)
def check_root_partition(ctx: CheckContext) -> None:
    for root in ctx.roots:
        klass = ctx.partition.class_of(root)
        a = trisection(ctx.graft, ctx.weighting, root).a
        if klass & ~a:
            _fail(
                "class of the root leaves A_r",
                root=root,
                klass=members(klass),
                a=members(a),
            )


@registry.register(
    "fcomp-ar", "A_r meets a factor-component in one class, the rest lies in D_r", True
)
def check_fcomp_ar(ctx: CheckContext) -> None:
    for root in ctx.roots:
        tri = trisection(ctx.graft, ctx.weighting, root)
        for x in members(tri.a):
            klass = ctx.partition.class_of(x)
            component = ctx.partition.factor_component_of(x)
            if tri.a & component != klass or component & ~klass & ~tri.d:
                _fail(
                    "factor-component splits badly around A_r",
                    root=root,
                    x=x,
                    klass=members(klass),
                    factor_component=members(component),
                    a=members(tri.a),
                    d=members(tri.d),
                )


@registry.register(
    "icomp", "A_r splits into classes and D_r into their critical sets", True
)
def check_icomp(ctx: CheckContext) -> None:
    for root in ctx.roots:
        for w in ctx.weightings:
            structure = icomp_structure(ctx.graft, root, w)
            if structure.k < 1:
                _fail("initial component without classes", root=root)


@registry.register(
    "coup-eq", "critical sets agree across roots and minimum joins", True
)
def check_coup_eq(ctx: CheckContext) -> None:
    gt = ctx.graft
    for root in ctx.roots:
        for w in ctx.weightings:
            a = trisection(gt, w, root).a
            for klass in ctx.partition.classes_within(a):
                neiset = 0
                for piece in neicomp_of_roots(gt, w, 1 << root, klass):
                    neiset |= piece
                reference = critical_set(gt, klass, ctx.weighting)
                if neiset != reference:
                    _fail(
                        "critical set depends on the root or the join",
                        root=root,
                        klass=members(klass),
                        neiset=members(neiset),
                        critical=members(reference),
                        join=members(w.join_edges),
                    )


@registry.register(
    "oracle-critical", "critical sets equal the maximum negative sets", True
)
def check_oracle_critical(ctx: CheckContext) -> None:
    gt = ctx.graft
    for w in ctx.weightings:
        for klass in ctx.partition.classes:
            constructed = critical_set(gt, klass, w)
            fixpoint = negative_set_bruteforce(gt, w, klass)
            if constructed != fixpoint:
                _fail(
                    "critical set differs from the negative set",
                    klass=members(klass),
                    critical=members(constructed),
                    negative=members(fixpoint),
                    join=members(w.join_edges),
                )


@registry.register("neigh-sole", "distinct classes in A_r share no D_r component", True)
def check_neigh_sole(ctx: CheckContext) -> None:
    gt = ctx.graft
    for root in ctx.roots:
        a = trisection(gt, ctx.weighting, root).a
        seen: Dict[VertexSet, VertexSet] = {}
        for klass in ctx.partition.classes_within(a):
            for piece in neicomp_of_roots(gt, ctx.weighting, 1 << root, klass):
                if piece in seen:
                    _fail(
                        "component shared by two classes",
                        root=root,
                        component=members(piece),
                        classes=[members(seen[piece]), members(klass)],
                    )
                seen[piece] = klass


@registry.register(
    "neigh-elem",
    "allowed cut edges of a component are reached by allowed zero paths",
    True,
)
def check_neigh_elem(ctx: CheckContext) -> None:
    ctx.require_path_cap()
    gt = ctx.graft
    graph = gt.graph
    for root in ctx.roots:
        _, family = ctx.family(root)
        for w in ctx.weightings:
            for component in family.components:
                if component.capital:
                    continue
                entry = entry_vertex(gt, w, component.vertices)
                for edge_id in members(cut(graph, component.vertices) & ctx.allowed):
                    u, v = graph.ends(edge_id)
                    target = u if (component.vertices >> u) & 1 else v
                    if target == entry:
                        continue
                    paths = simple_paths(
                        graph,
                        entry,
                        target,
                        within=component.vertices,
                        edge_window=ctx.allowed,
                    )
                    if not any(w.weight_of(p.edge_set) == 0 for p in paths):
                        _fail(
                            "no allowed zero path to the cut edge",
                            root=root,
                            component=members(component.vertices),
                            entry=entry,
                            edge=edge_id,
                            join=members(w.join_edges),
                        )


# --- rootlization and root sets ---


@registry.register("rootlize-join", "minimum joins of the extension are F + rs")
def check_rootlize_join(ctx: CheckContext) -> None:
    for mount in ctx.extreme_mounts():
        report = extended_min_joins(rootlize(ctx.graft, mount))
        if not report.passed:
            first = report.failures[0]
            _fail(f"{first.label} failed", mount=members(mount), **first.witness)


@registry.register(
    "rootlize-sim", "the extension keeps factor-components and shrinks distances"
)
def check_rootlize_sim(ctx: CheckContext) -> None:
    gt = ctx.graft
    n = gt.vertex_count
    base_components = sorted(factor_components(gt))
    for mount in ctx.extreme_mounts():
        rl = rootlize(gt, mount)
        gadget = (1 << rl.root) | (1 << rl.attachment)
        extended_components = sorted(factor_components(rl.extended))
        if extended_components != sorted(base_components + [gadget]):
            _fail(
                "extension changed the factor-components",
                mount=members(mount),
                base=_sets(base_components),
                extended=_sets(extended_components),
            )
        ext_table = distance_matrix(rl.extended)
        if (ext_table[:n, :n] > ctx.table).any():
            _fail("extension increased a distance", mount=members(mount))
        for u, v in combinations(range(n), 2):
            if kl_related(rl.extended, u, v) and not kl_related(gt, u, v):
                _fail("extension merged two classes", mount=members(mount), u=u, v=v)


@registry.register(
    "rootlize-dist", "dist(r,y) in the extension is the minimum over the mount"
)
def check_rootlize_dist(ctx: CheckContext) -> None:
    gt, w = ctx.graft, ctx.weighting
    n = gt.vertex_count
    ctx.require_path_cap(n + 2)
    for mount in ctx.extreme_mounts():
        rl = rootlize(gt, mount)
        lifted = Weighting(rl.lift(w.join_edges))
        ext_table = distance_matrix(rl.extended)
        if int(ext_table[rl.root, rl.attachment]) != -1:
            _fail("root and attachment not at distance -1", mount=members(mount))
        mount_edge = dict(rl.mount_edges)
        for y in range(n):
            best = min(int(ctx.table[x, y]) for x in members(mount))
            if int(ext_table[rl.root, y]) != best:
                _fail(
                    "root distance is not the mount minimum",
                    mount=members(mount),
                    y=y,
                    extended=int(ext_table[rl.root, y]),
                    expected=best,
                )
            expected = set()
            for x in members(mount):
                if int(ctx.table[x, y]) != best:
                    continue
                for path in all_shortest_paths(gt, w, x, y):
                    expected.add((rl.rs_edge, mount_edge[x]) + path.edge_ids)
            extended_paths = all_shortest_paths(rl.extended, lifted, rl.root, y)
            found = {p.edge_ids for p in extended_paths}
            if found != expected:
                _fail(
                    "extension shortest paths do not pass through the mount",
                    mount=members(mount),
                    y=y,
                    found=sorted(list(p) for p in found),
                    expected=sorted(list(p) for p in expected),
                )


@registry.register(
    "rootlize-layers", "extension layers and A/D match the root set ones"
)
def check_rootlize_layers(ctx: CheckContext) -> None:
    gt, w = ctx.graft, ctx.weighting
    for mount in ctx.extreme_mounts():
        rl = rootlize(gt, mount)
        r_bit, s_bit = 1 << rl.root, 1 << rl.attachment
        base = profile_of_roots(gt, w, mount)
        extended = profile(rl.extended, Weighting(rl.lift(w.join_edges)), rl.root)
        low = min(base.min_level, extended.min_level) - 1
        high = max(base.max_level, extended.max_level) + 1
        for index in range(low, high + 1):
            if index < -1:
                expected = base.layle(index)
            elif index == -1:
                expected = base.layle(index) | s_bit
            else:
                expected = base.layle(index) | r_bit | s_bit
            if extended.layle(index) != expected:
                _fail(
                    "extension layer differs from the root set layer",
                    mount=members(mount),
                    index=index,
                    extended=members(extended.layle(index)),
                    expected=members(expected),
                )
        base_tri = trisection_of_roots(gt, w, mount)
        ext_tri = trisection(rl.extended, Weighting(rl.lift(w.join_edges)), rl.root)
        if (
            ext_tri.initial != base_tri.initial | r_bit | s_bit
            or ext_tri.a != base_tri.a | r_bit
            or ext_tri.d != base_tri.d | s_bit
        ):
            _fail(
                "extension initial component differs from the initial subgraph",
                mount=members(mount),
                a=members(base_tri.a),
                d=members(base_tri.d),
                extended_a=members(ext_tri.a),
                extended_d=members(ext_tri.d),
            )


@registry.register(
    "homog", "A_X and D_X split by classes for one-sided extreme X", True
)
def check_homog(ctx: CheckContext) -> None:
    for mount in ctx.extreme_mounts(homogeneous=True):
        structure = homogeneous_structure(ctx.graft, mount, ctx.weighting)
        if structure.k < 1:
            _fail("root set without classes", mount=members(mount))


@registry.register("monotone", "A and D sets grow monotonically inside A_R", True)
def check_monotone(ctx: CheckContext) -> None:
    for mount in ctx.extreme_mounts(homogeneous=True):
        report = monotonicity_checks(ctx.graft, mount, ctx.weighting)
        if not report.passed:
            first = report.failures[0]
            _fail(f"{first.label} failed", mount=members(mount), **first.witness)


@registry.register("hetero", "A_X and D_X split along the color classes", True)
def check_hetero(ctx: CheckContext) -> None:
    for mount in ctx.extreme_mounts(homogeneous=False):
        structure = heterogeneous_structure(ctx.graft, mount, ctx.weighting)
        if not structure.min_distance_split:
            ctx.note("hetero_min_distance_split_differs")


# --- capital components ---


@registry.register(
    "neigh-posi", "the capital level is at distance >= 1 from its neighbors", True
)
def check_neigh_posi(ctx: CheckContext) -> None:
    graph = ctx.graft.graph
    for root in ctx.roots:
        prof, family = ctx.family(root)
        for index in range(0, prof.max_level):
            capital = family.capital_at(index)
            for x in members(capital & prof.level(index)):
                for y in members(neighbors(graph, capital)):
                    if int(ctx.table[x, y]) < 1:
                        _fail(
                            "neighbor too close to the capital level",
                            root=root,
                            index=index,
                            x=x,
                            y=y,
                            distance=int(ctx.table[x, y]),
                        )


@registry.register(
    "hinitial", "the next capital component is the initial subgraph of N(K)", True
)
def check_hinitial(ctx: CheckContext) -> None:
    for root in ctx.roots:
        capital_chain(ctx.graft, root, ctx.weighting)


@registry.register(
    "capital", "each capital step splits into classes and critical sets", True
)
def check_capital(ctx: CheckContext) -> None:
    gt = ctx.graft
    graph = gt.graph
    for root in ctx.roots:
        chain = capital_chain(gt, root, ctx.weighting)
        for step in chain.steps:
            union_a = 0
            union_d = 0
            pieces: List[VertexSet] = []
            for klass in step.classes:
                if klass not in ctx.partition.classes or klass & union_a:
                    _fail(
                        "capital step class is not a fresh class",
                        root=root,
                        index=step.index,
                        klass=members(klass),
                    )
                critical = critical_set(gt, klass, ctx.weighting)
                if critical & union_d:
                    _fail(
                        "capital step critical sets overlap",
                        root=root,
                        index=step.index,
                        klass=members(klass),
                    )
                union_a |= klass
                union_d |= critical
                pieces.extend(connected_components(graph, critical))
            rest = step.next_capital & ~step.capital & ~step.a_frontier
            if union_a != step.a_frontier or union_d != rest:
                _fail(
                    "capital step is not covered by its classes",
                    root=root,
                    index=step.index,
                    a=members(step.a_frontier),
                    rest=members(rest),
                )
            if sorted(pieces) != sorted(connected_components(graph, rest)):
                _fail(
                    "capital step components do not refine by class",
                    root=root,
                    index=step.index,
                    components=_sets(connected_components(graph, rest)),
                    by_class=_sets(sorted(pieces)),
                )
