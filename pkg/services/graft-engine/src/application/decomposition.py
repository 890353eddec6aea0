"""Kotzig-Lovász classes, negative and critical sets, initial-component structure."""

from typing import Any, Dict, List, Optional, Tuple

import structlog

from ..domain.exceptions import SizeCapError, StructureViolation
from ..domain.graph import (
    VertexSet,
    bipartition,
    bits,
    connected_components,
    cut,
    lowest,
    members,
    reach,
    simple_paths,
)
from ..domain.models import (
    CriticalAtlas,
    CriticalEntry,
    Graft,
    InitialStructure,
    KLPartition,
    Weighting,
)
from ..infrastructure.config import NEGATIVE_SET_VERTEX_CAP
from .distance import distance_matrix, require_minimum, trisection_of_roots
from .join_solver import allowed_edges, factor_components, min_join

logger = structlog.get_logger(__name__)


def default_weighting(gt: Graft, w: Optional[Weighting] = None) -> Weighting:
    return w if w is not None else Weighting(min_join(gt).edges)


def kl_related(gt: Graft, u: int, v: int) -> bool:
    """Same factor-component and distance 0."""
    if u == v:
        return True
    same = any((c >> u) & 1 and (c >> v) & 1 for c in factor_components(gt))
    return same and int(distance_matrix(gt)[u, v]) == 0


def kl_classes(gt: Graft) -> KLPartition:
    """Classes of the Kotzig-Lovász relation, ordered by minimum vertex."""
    table = distance_matrix(gt)
    components = factor_components(gt)
    assigned = 0
    classes = []
    for v in range(gt.vertex_count):
        if (assigned >> v) & 1:
            continue
        home = next(c for c in components if (c >> v) & 1)
        klass = bits(u for u in members(home) if int(table[v, u]) == 0) | (1 << v)
        klass &= ~assigned
        classes.append(klass)
        assigned |= klass
    return KLPartition(classes=tuple(classes), factor_components=tuple(components))


def _has_negative_exit(
    gt: Graft, w: Weighting, x: int, inside: VertexSet, klass: VertexSet
) -> bool:
    window = inside | klass
    if not reach(gt.graph, 1 << x, window) & klass:
        return False
    for path in simple_paths(gt.graph, x, within=window, stop=klass):
        if (klass >> path.vertices[-1]) & 1 and w.weight_of(path.edge_set) < 0:
            return True
    return False


def negative_set_bruteforce(gt: Graft, w: Weighting, s: VertexSet) -> VertexSet:
    """The maximum F-negative set for a class, as a greatest fixpoint."""
    if gt.vertex_count > NEGATIVE_SET_VERTEX_CAP:
        raise SizeCapError(
            f"{gt.vertex_count} vertices exceed the negative set cap "
            f"of {NEGATIVE_SET_VERTEX_CAP}"
        )
    require_minimum(gt, w)
    current = gt.all_vertices & ~s
    changed = True
    while changed:
        changed = False
        for x in members(current):
            if not _has_negative_exit(gt, w, x, current, s):
                current &= ~(1 << x)
                changed = True
    return current


def neicomp_of_roots(
    gt: Graft, w: Weighting, roots: VertexSet, s: VertexSet
) -> List[VertexSet]:
    """Components of G[D_R] joined to s by an allowed edge."""
    graph = gt.graph
    d = trisection_of_roots(gt, w, roots).d
    allowed = allowed_edges(gt)
    touching = 0
    for v in members(s):
        touching |= graph.incidence[v]
    return [
        component
        for component in connected_components(graph, d)
        if cut(graph, component) & allowed & touching
    ]


def neicomp(
    gt: Graft, root: int, s: VertexSet, w: Optional[Weighting] = None
) -> List[VertexSet]:
    return neicomp_of_roots(gt, default_weighting(gt, w), 1 << root, s)


def critical_set_of_roots(
    gt: Graft, w: Weighting, roots: VertexSet, s: VertexSet
) -> VertexSet:
    """Union of the components of G[D_R] joined to s by an allowed edge."""
    found = 0
    for component in neicomp_of_roots(gt, w, roots, s):
        found |= component
    return found


def critical_set(gt: Graft, s: VertexSet, w: Optional[Weighting] = None) -> VertexSet:
    """coup(S), built as the union of neicomp(S) from the smallest vertex of S."""
    return critical_set_of_roots(gt, default_weighting(gt, w), 1 << lowest(s), s)


def _violation(message: str, **witness: Any) -> StructureViolation:
    logger.warning("structure violation", reason=message, **witness)
    return StructureViolation(message, witness)


def initial_structure(gt: Graft, w: Weighting, roots: VertexSet) -> InitialStructure:
    """Split A_R into classes and D_R into their critical sets.

    The critical set of a class is read off G[D_R] for the same root set R.
    When R lies inside one color class it must also equal coup(S) seen from
    the class itself.

    Raises StructureViolation when a class straddles A_R, when the critical
    sets overlap or miss part of D_R, or when a component of G[D_R] is not
    claimed by exactly one class.
    """
    tri = trisection_of_roots(gt, w, roots)
    side_a, side_b = bipartition(gt.graph)
    one_sided = not roots & side_a or not roots & side_b
    partition = kl_classes(gt)
    classes = []
    for klass in partition.classes:
        if not klass & tri.a:
            continue
        if klass & ~tri.a:
            raise _violation(
                "class straddles A",
                klass=members(klass),
                a=members(tri.a),
                roots=members(roots),
            )
        classes.append(klass)

    entries = []
    covered = 0
    claimed: Dict[VertexSet, VertexSet] = {}
    for klass in classes:
        pieces = tuple(neicomp_of_roots(gt, w, roots, klass))
        neiset = 0
        for piece in pieces:
            if piece in claimed:
                raise _violation(
                    "component claimed by two classes",
                    component=members(piece),
                    classes=[members(claimed[piece]), members(klass)],
                )
            claimed[piece] = klass
            neiset |= piece
        critical = neiset
        if one_sided:
            from_class = critical_set(gt, klass, w)
            if critical != from_class:
                raise _violation(
                    "neighbor set differs from critical set",
                    klass=members(klass),
                    roots=members(roots),
                    neiset=members(neiset),
                    critical=members(from_class),
                )
        if critical & covered:
            raise _violation(
                "critical sets overlap",
                klass=members(klass),
                overlap=members(critical & covered),
            )
        covered |= critical
        entries.append(CriticalEntry(klass=klass, neicomp=pieces, critical=critical))

    union_a = 0
    for klass in classes:
        union_a |= klass
    if union_a != tri.a:
        raise _violation(
            "classes do not cover A", a=members(tri.a), union=members(union_a)
        )
    if covered != tri.d:
        raise _violation(
            "critical sets do not cover D", d=members(tri.d), union=members(covered)
        )
    for component in connected_components(gt.graph, tri.d):
        if component not in claimed:
            raise _violation(
                "component of D left unclaimed", component=members(component)
            )
    return InitialStructure(
        roots=roots,
        trisection=tri,
        atlas=CriticalAtlas(roots=roots, entries=tuple(entries)),
    )


def icomp_structure(
    gt: Graft, root: int, w: Optional[Weighting] = None
) -> InitialStructure:
    """A_r as a disjoint union of classes and D_r of their critical sets."""
    bipartition(gt.graph)
    return initial_structure(gt, default_weighting(gt, w), 1 << root)


def critical_atlas(
    gt: Graft, root: int, w: Optional[Weighting] = None
) -> CriticalAtlas:
    return icomp_structure(gt, root, w).atlas


def class_pairs(partition: KLPartition) -> List[Tuple[VertexSet, VertexSet]]:
    return [
        (first, second)
        for i, first in enumerate(partition.classes)
        for second in partition.classes[i + 1:]
    ]
