"""Growth of the capital distance component level by level."""

from typing import List, Optional

import structlog

from ...domain.exceptions import StructureViolation
from ...domain.graph import bipartition, members, neighbors
from ...domain.models import CapitalChain, CapitalStep, Graft, Weighting
from ..decomposition import default_weighting
from ..distance import distance_components, distance_matrix, is_extreme, profile
from ..rootlize import homogeneous_structure

logger = structlog.get_logger(__name__)


def capital_chain(gt: Graft, root: int, w: Optional[Weighting] = None) -> CapitalChain:
    """Follow K (capital at i) to L (capital at i + 1) through N = N(K).

    At every step the frontier N must be extreme with dist(x, y) >= 1 from
    the level-i part of K, L ∩ level_{i+1} must equal A_N, and the rest of L
    outside K must equal D_N. The classes of each step refine A_N.
    """
    graph = gt.graph
    bipartition(graph)
    weighting = default_weighting(gt, w)
    prof = profile(gt, weighting, root)
    family = distance_components(prof, gt)
    table = distance_matrix(gt)
    steps: List[CapitalStep] = []
    for index in range(0, prof.max_level):
        capital = family.capital_at(index)
        frontier = neighbors(graph, capital)
        next_capital = family.capital_at(index + 1)
        witness = {"root": root, "index": index, "capital": members(capital)}

        for x in members(capital & prof.level(index)):
            for y in members(frontier):
                if int(table[x, y]) < 1:
                    raise StructureViolation(
                        "frontier vertex too close to the capital level",
                        {**witness, "x": x, "y": y, "distance": int(table[x, y])},
                    )
        if not is_extreme(gt, frontier):
            raise StructureViolation(
                "frontier is not extreme", {**witness, "frontier": members(frontier)}
            )

        structure = homogeneous_structure(gt, frontier, weighting)
        a_frontier = structure.trisection.a
        d_frontier = structure.trisection.d
        top = next_capital & prof.level(index + 1)
        rest = next_capital & ~capital & ~prof.level(index + 1)
        if top != a_frontier or rest != d_frontier:
            raise StructureViolation(
                "next capital component does not match the frontier structure",
                {
                    **witness,
                    "frontier": members(frontier),
                    "next_capital": members(next_capital),
                    "a_frontier": members(a_frontier),
                    "d_frontier": members(d_frontier),
                },
            )
        steps.append(
            CapitalStep(
                index=index,
                capital=capital,
                frontier=frontier,
                next_capital=next_capital,
                a_frontier=a_frontier,
                d_frontier=d_frontier,
                classes=tuple(structure.classes),
            )
        )
    logger.debug("capital chain", root=root, steps=len(steps))
    return CapitalChain(root=root, steps=tuple(steps))
