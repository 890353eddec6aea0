"""Rootlization gadget, root-set distances and root-set initial structure."""

from functools import lru_cache
from typing import Any, List, Optional

import structlog

from ..domain.exceptions import NotExtremeError, NotHomogeneousError, StructureViolation
from ..domain.graph import (
    VertexSet,
    bipartition,
    lowest,
    members,
)
from ..domain.models import (
    CriticalAtlas,
    Graft,
    HeterogeneousStructure,
    InitialStructure,
    MonotonicityReport,
    Multigraph,
    Rootlization,
    RootlizationJoinReport,
    RootSetProfile,
    StatementVerdict,
    Trisection,
    Weighting,
)
from .decomposition import (
    critical_set,
    default_weighting,
    initial_structure,
    kl_classes,
)
from .distance import (
    distance_components,
    distance_matrix,
    is_extreme,
    profile,
    profile_of_roots,
    trisection,
    trisection_of,
    trisection_of_roots,
)
from .join_solver import allowed_edges, nu_bruteforce

logger = structlog.get_logger(__name__)


@lru_cache(maxsize=8192)
def rootlize(gt: Graft, mount: VertexSet) -> Rootlization:
    """Append root r, attachment s, edge rs and an edge s-x per mount vertex."""
    if not mount:
        raise ValueError("mount must be nonempty")
    if not is_extreme(gt, mount):
        raise NotExtremeError(f"mount {members(mount)} is not extreme")
    n = gt.vertex_count
    root, attachment = n, n + 1
    pairs = [(e.u, e.v) for e in gt.graph.edges]
    rs_edge = len(pairs)
    pairs.append((root, attachment))
    mount_edges = []
    for x in members(mount):
        mount_edges.append((x, len(pairs)))
        pairs.append((attachment, x))
    extended = Graft(
        Multigraph.from_pairs(n + 2, pairs),
        gt.terminals | (1 << root) | (1 << attachment),
        gt.allow_disconnected,
    )
    return Rootlization(
        base=gt,
        mount=mount,
        extended=extended,
        root=root,
        attachment=attachment,
        rs_edge=rs_edge,
        mount_edges=tuple(mount_edges),
    )


@lru_cache(maxsize=8192)
def extended_min_joins(rl: Rootlization) -> RootlizationJoinReport:
    """Compare the minimum joins of the base and extended grafts."""
    base_nu, base_joins = nu_bruteforce(rl.base)
    extended_nu, extended_joins = nu_bruteforce(rl.extended)
    lifted = sorted(rl.lift(f) for f in base_joins)
    rs_bit = 1 << rl.rs_edge
    verdicts = (
        StatementVerdict(
            "extend-nu",
            extended_nu == base_nu + 1,
            {"base_nu": base_nu, "extended_nu": extended_nu},
        ),
        StatementVerdict(
            "extend-join-form",
            sorted(extended_joins) == lifted,
            {
                "extended_joins": [members(f) for f in extended_joins],
                "lifted_joins": [members(f) for f in lifted],
            },
        ),
        StatementVerdict(
            "extend-rs",
            all(f & rs_bit for f in extended_joins),
            {"rs_edge": rl.rs_edge},
        ),
        StatementVerdict(
            "extend-mount-not-allowed",
            not allowed_edges(rl.extended) & rl.mount_edge_set,
            {"allowed": members(allowed_edges(rl.extended) & rl.mount_edge_set)},
        ),
    )
    return RootlizationJoinReport(
        verdicts=verdicts,
        base_nu=base_nu,
        extended_nu=extended_nu,
        base_joins=tuple(base_joins),
        extended_joins=tuple(extended_joins),
    )


def root_set_profile(
    gt: Graft, w: Weighting, roots: VertexSet, cross_check: bool = True
) -> RootSetProfile:
    """Distances min over the roots, with the initial subgraph and A_R/D_R/C_R.

    With ``cross_check`` the same distances are recomputed in the
    rootlization by the roots, where dist(r, x) must match for every original
    vertex and dist(r, s) must be -1.
    """
    if not is_extreme(gt, roots):
        raise NotExtremeError(f"root set {members(roots)} is not extreme")
    prof = profile_of_roots(gt, w, roots)
    family = distance_components(prof, gt)
    tri = trisection_of(prof, family, gt)
    result = RootSetProfile(profile=prof, family=family, trisection=tri)
    if cross_check:
        rl = rootlize(gt, roots)
        lifted = profile(rl.extended, Weighting(rl.lift(w.join_edges)), rl.root)
        own = lifted.dist[: gt.vertex_count]
        if own != prof.dist or lifted.dist[rl.attachment] != -1:
            raise StructureViolation(
                "root set distances disagree with the rootlization",
                {
                    "roots": members(roots),
                    "direct": list(prof.dist),
                    "rootlized": list(lifted.dist),
                },
            )
    return result


def _color_split(gt: Graft, roots: VertexSet) -> tuple:
    side_a, side_b = bipartition(gt.graph)
    return roots & side_a, roots & side_b


@lru_cache(maxsize=8192)
def homogeneous_structure(
    gt: Graft, roots: VertexSet, w: Optional[Weighting] = None
) -> InitialStructure:
    """A_R as a disjoint union of classes and D_R of their critical sets.

    The rootlization route is checked alongside: every class of the extended
    graft inside A_r other than {r} is a class of the base graft with the
    same critical set, {r} has critical set {s}, and A_r, D_r of the
    extension are A_R + r and D_R + s.
    """
    in_a, in_b = _color_split(gt, roots)
    if not is_extreme(gt, roots):
        raise NotExtremeError(f"root set {members(roots)} is not extreme")
    if in_a and in_b:
        raise NotHomogeneousError(f"root set {members(roots)} meets both color classes")
    weighting = default_weighting(gt, w)
    structure = initial_structure(gt, weighting, roots)

    rl = rootlize(gt, roots)
    lifted = Weighting(rl.lift(weighting.join_edges))
    extended = initial_structure(rl.extended, lifted, 1 << rl.root)
    base_classes = set(kl_classes(gt).classes)
    for entry in extended.atlas.entries:
        if entry.klass == 1 << rl.root:
            if entry.critical != 1 << rl.attachment:
                raise StructureViolation(
                    "root class of the extension has a foreign critical set",
                    {"roots": members(roots), "critical": members(entry.critical)},
                )
            continue
        if entry.klass not in base_classes or entry.critical != critical_set(
            gt, entry.klass, weighting
        ):
            raise StructureViolation(
                "extension class differs from the base class",
                {
                    "roots": members(roots),
                    "klass": members(entry.klass),
                    "extended_critical": members(entry.critical),
                },
            )
    ext_tri = extended.trisection
    if ext_tri.a != structure.trisection.a | (1 << rl.root) or ext_tri.d != (
        structure.trisection.d | (1 << rl.attachment)
    ):
        raise StructureViolation(
            "extension A/D do not match the root set A/D",
            {
                "roots": members(roots),
                "a": members(structure.trisection.a),
                "d": members(structure.trisection.d),
                "extended_a": members(ext_tri.a),
                "extended_d": members(ext_tri.d),
            },
        )
    return structure


def _joined(
    roots: VertexSet, first: InitialStructure, second: InitialStructure, n: int
) -> InitialStructure:
    initial = first.trisection.initial | second.trisection.initial
    tri = Trisection(
        roots=roots,
        initial=initial,
        a=first.trisection.a | second.trisection.a,
        d=first.trisection.d | second.trisection.d,
        c=((1 << n) - 1) & ~initial,
    )
    entries = sorted(
        first.atlas.entries + second.atlas.entries, key=lambda e: lowest(e.klass)
    )
    return InitialStructure(
        roots=roots,
        trisection=tri,
        atlas=CriticalAtlas(roots=roots, entries=tuple(entries)),
    )


def heterogeneous_structure(
    gt: Graft, roots: VertexSet, w: Optional[Weighting] = None
) -> HeterogeneousStructure:
    """Initial structure of an extreme root set that may meet both color classes.

    Each color side is handled by its own rootlization. The A sets of the two
    sides must form an extreme set and the initial subgraphs of the sides must
    be disjoint; A_X and D_X are then their unions, split by the classes and
    critical sets of both sides.
    """
    in_a, in_b = _color_split(gt, roots)
    if not is_extreme(gt, roots):
        raise NotExtremeError(f"root set {members(roots)} is not extreme")
    weighting = default_weighting(gt, w)
    if not in_a or not in_b:
        single = homogeneous_structure(gt, roots, weighting)
        return HeterogeneousStructure(
            roots=roots,
            combined=single,
            side_a=single if in_a else None,
            side_b=single if in_b else None,
            bi_extreme=True,
        )
    side_a = homogeneous_structure(gt, in_a, weighting)
    side_b = homogeneous_structure(gt, in_b, weighting)
    tri_a, tri_b = side_a.trisection, side_b.trisection
    if not is_extreme(gt, tri_a.a | tri_b.a):
        raise StructureViolation(
            "union of the one-sided A sets is not extreme",
            {"roots": members(roots), "a_a": members(tri_a.a), "a_b": members(tri_b.a)},
        )
    if tri_a.initial & tri_b.initial:
        raise StructureViolation(
            "one-sided initial subgraphs overlap",
            {
                "roots": members(roots),
                "initial_a": members(tri_a.initial),
                "initial_b": members(tri_b.initial),
            },
        )
    combined = _joined(roots, side_a, side_b, gt.vertex_count)
    by_minimum = trisection_of_roots(gt, weighting, roots)
    joined = combined.trisection
    split = by_minimum.a == joined.a and by_minimum.d == joined.d
    if not split:
        logger.info(
            "minimum distance root set does not split",
            roots=members(roots),
            a=members(by_minimum.a),
            d=members(by_minimum.d),
            sides_a=members(combined.trisection.a),
            sides_d=members(combined.trisection.d),
        )
    return HeterogeneousStructure(
        roots=roots,
        combined=combined,
        side_a=side_a,
        side_b=side_b,
        bi_extreme=True,
        min_distance_split=split,
    )


def _subset(
    label: str, inner: VertexSet, outer: VertexSet, **context: Any
) -> StatementVerdict:
    return StatementVerdict(
        label,
        inner & ~outer == 0,
        {"inner": members(inner), "outer": members(outer), **context},
    )


def _equal(
    label: str, left: VertexSet, right: VertexSet, **context: Any
) -> StatementVerdict:
    return StatementVerdict(
        label,
        left == right,
        {"left": members(left), "right": members(right), **context},
    )


def monotonicity_checks(
    gt: Graft, roots: VertexSet, w: Optional[Weighting] = None
) -> MonotonicityReport:
    """Containment and union laws for A and D sets of vertices in A_R.

    The D-part of the union law is read over x in A_R: D_R is the union of
    D_x for x in A_R.
    """
    in_a, in_b = _color_split(gt, roots)
    if in_a and in_b:
        raise NotHomogeneousError(f"root set {members(roots)} meets both color classes")
    if not is_extreme(gt, roots):
        raise NotExtremeError(f"root set {members(roots)} is not extreme")
    weighting = default_weighting(gt, w)
    own = root_set_profile(gt, weighting, roots, cross_check=False).trisection
    verdicts: List[StatementVerdict] = []
    single = not roots & (roots - 1)
    prefix = "root" if single else "root-set"

    union_a = 0
    union_d = 0
    for x in members(own.a):
        tri_x = trisection(gt, weighting, x)
        union_a |= tri_x.a
        union_d |= tri_x.d
        verdicts.append(_subset(f"{prefix}-a-includes", tri_x.a, own.a, x=x))
        verdicts.append(_subset(f"{prefix}-d-includes", tri_x.d, own.d, x=x))
    verdicts.append(_equal(f"{prefix}-a-union", union_a, own.a))
    verdicts.append(_equal(f"{prefix}-d-union", union_d, own.d))

    if single:
        r = lowest(roots)
        table = distance_matrix(gt)
        for x in range(gt.vertex_count):
            if int(table[r, x]) > 0:
                initial_x = trisection(gt, weighting, x).initial
                verdicts.append(
                    StatementVerdict(
                        "initial-disjoint",
                        not initial_x & own.initial,
                        {"x": x, "overlap": members(initial_x & own.initial)},
                    )
                )

    rl = rootlize(gt, roots)
    lifted = Weighting(rl.lift(weighting.join_edges))
    ext_table = distance_matrix(rl.extended)
    r, s = rl.root, rl.attachment
    for x in range(gt.vertex_count):
        verdicts.append(
            StatementVerdict(
                "attachment-step",
                int(ext_table[x, s]) == int(ext_table[x, r]) + 1,
                {"x": x, "to_s": int(ext_table[x, s]), "to_r": int(ext_table[x, r])},
            )
        )
    ext_a = trisection(rl.extended, lifted, r).a
    gadget = (1 << r) | (1 << s)
    for x in members(ext_a & ~(1 << r)):
        verdicts.append(
            StatementVerdict(
                "a-far-from-attachment", int(ext_table[x, s]) >= 1, {"x": x}
            )
        )
        ext_x = trisection(rl.extended, lifted, x)
        base_x = trisection(gt, weighting, x)
        verdicts.append(
            StatementVerdict(
                "a-avoids-gadget",
                not (ext_x.a | ext_x.d) & gadget,
                {"x": x, "a": members(ext_x.a), "d": members(ext_x.d)},
            )
        )
        verdicts.append(_equal("a-kept-by-extension", ext_x.a, base_x.a, x=x))
        verdicts.append(_equal("d-kept-by-extension", ext_x.d, base_x.d, x=x))
    report = MonotonicityReport(verdicts=tuple(verdicts), roots=roots)
    logger.debug(
        "monotonicity checks",
        roots=members(roots),
        checked=len(verdicts),
        failed=len(report.failures),
    )
    return report
