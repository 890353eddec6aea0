"""Joins, minimality, ν(G,T), allowed edges and factor-components."""

from collections import deque
from functools import lru_cache
from typing import Deque, Dict, List, Optional, Tuple

import structlog

from ..domain.exceptions import (
    InfeasibleError,
    NotAJoinError,
    ParityError,
    SizeCapError,
)
from ..domain.graph import (
    EdgeSet,
    Multigraph,
    VertexSet,
    connected_components,
    cut,
    members,
    odd_vertices,
)
from ..domain.models import Graft, JoinCertificate, JoinSolver, SubgraftView
from ..infrastructure.config import BRUTEFORCE_EDGE_CAP, NU_CACHE_SIZE
from ..infrastructure.join_solvers import (
    MAX_PAIRING_TERMINALS,
    BruteForceJoinSolver,
    PairingJoinSolver,
)

logger = structlog.get_logger(__name__)

_solver: JoinSolver = PairingJoinSolver()


def get_solver() -> JoinSolver:
    return _solver


def set_solver(solver: JoinSolver) -> None:
    """Swap the strategy used for every ν computation."""
    global _solver
    _solver = solver
    _nu_cached.cache_clear()
    allowed_edges.cache_clear()


@lru_cache(maxsize=NU_CACHE_SIZE)
def _nu_cached(graph: Multigraph, terminals: VertexSet, edge_window: EdgeSet) -> int:
    return _solver.nu(graph, terminals, edge_window)


def nu_of(
    graph: Multigraph, terminals: VertexSet, edge_window: Optional[EdgeSet] = None
) -> int:
    window = graph.all_edges if edge_window is None else edge_window
    return _nu_cached(graph, terminals, window)


def nu(gt: Graft, edge_window: Optional[EdgeSet] = None) -> int:
    """ν of the graft restricted to a spanning edge window.

    Raises InfeasibleError when the window splits off a component with an
    odd number of terminals.
    """
    return nu_of(gt.graph, gt.terminals, edge_window)


def is_join(gt: Graft, f: EdgeSet) -> bool:
    return odd_vertices(gt.graph, f) == gt.terminals


@lru_cache(maxsize=4096)
def nu_bruteforce(gt: Graft) -> Tuple[int, List[EdgeSet]]:
    """Exact ν with the complete, sorted list of minimum joins."""
    solver = BruteForceJoinSolver(BRUTEFORCE_EDGE_CAP)
    return solver.minimum_joins(gt.graph, gt.terminals)


def min_join(gt: Graft) -> JoinCertificate:
    """The lexicographically smallest minimum join.

    Edges are decided in ascending id order: an edge is kept when a minimum
    join still exists that contains every kept edge, the new edge, and no
    edge decided against.
    """
    if bin(gt.terminals).count("1") > MAX_PAIRING_TERMINALS:
        raise SizeCapError(
            f"{bin(gt.terminals).count('1')} terminals exceed the cap "
            f"of {MAX_PAIRING_TERMINALS}"
        )
    graph = gt.graph
    target = nu(gt)
    chosen = 0
    odd = 0
    size = 0
    for edge in graph.edges:
        if size == target:
            break
        later = graph.all_edges & ~((1 << (edge.edge_id + 1)) - 1)
        residual = gt.terminals ^ odd ^ graph.edge_ends[edge.edge_id]
        try:
            feasible = nu_of(graph, residual, later) == target - size - 1
        except InfeasibleError:
            feasible = False
        if feasible:
            chosen |= 1 << edge.edge_id
            odd ^= graph.edge_ends[edge.edge_id]
            size += 1
    if odd != gt.terminals or size != target:
        raise AssertionError("greedy join reconstruction lost feasibility")
    logger.debug("min join", nu=target, join=members(chosen))
    return JoinCertificate(edges=chosen, size=size, minimal=True)


def join_circuits(gt: Graft, f: EdgeSet) -> List[EdgeSet]:
    """Split an edge set with all degrees even into edge-disjoint circuits."""
    graph = gt.graph
    if odd_vertices(graph, f):
        raise NotAJoinError("edge set has vertices of odd degree")
    remaining = f
    found = []
    while remaining:
        start = graph.edges[(remaining & -remaining).bit_length() - 1].u
        trail_vertices = [start]
        trail_edges: List[int] = []
        position = {start: 0}
        v = start
        while True:
            edge_id = next(
                eid for _, eid in graph.adjacency[v] if (remaining >> eid) & 1
            )
            remaining ^= 1 << edge_id
            v = graph.edges[edge_id].other(v)
            trail_edges.append(edge_id)
            if v in position:
                cycle = trail_edges[position[v]:]
                found.append(sum(1 << eid for eid in cycle))
                for dropped in trail_vertices[position[v] + 1:]:
                    del position[dropped]
                del trail_vertices[position[v] + 1:]
                del trail_edges[position[v]:]
                if not trail_edges:
                    break
            else:
                position[v] = len(trail_vertices)
                trail_vertices.append(v)
    return found


def _edge_weight(f: EdgeSet, edge_id: int) -> int:
    return -1 if (f >> edge_id) & 1 else 1


def negative_circuit(gt: Graft, f: EdgeSet) -> Optional[EdgeSet]:
    """A circuit of negative F-weight, or None when F is a minimum join.

    Label-correcting search per start vertex s over simple paths through
    vertices above s. A label is dropped when another label at the same vertex
    with the same first edge visited a subset of its vertices at no larger
    weight.
    """
    if not is_join(gt, f):
        raise NotAJoinError(f"{members(f)} is not a join")
    graph = gt.graph
    for start in range(graph.vertex_count):
        above = graph.all_vertices & ~((1 << (start + 1)) - 1)
        labels: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        queue: Deque[Tuple[int, int, int, int, EdgeSet]] = deque()
        for u, edge_id in graph.adjacency[start]:
            if (above >> u) & 1:
                visited = (1 << start) | (1 << u)
                weight = _edge_weight(f, edge_id)
                labels.setdefault((u, edge_id), []).append((visited, weight))
                queue.append((u, edge_id, visited, weight, 1 << edge_id))
        while queue:
            v, first, visited, weight, edges = queue.popleft()
            if (visited, weight) not in labels[(v, first)]:
                continue
            for u, edge_id in graph.adjacency[v]:
                step = weight + _edge_weight(f, edge_id)
                if u == start:
                    if edge_id != first and step < 0:
                        circuit = edges | (1 << edge_id)
                        logger.debug(
                            "negative circuit", circuit=members(circuit), weight=step
                        )
                        return circuit
                    continue
                if not (above >> u) & 1 or (visited >> u) & 1:
                    continue
                reached = visited | (1 << u)
                kept = labels.setdefault((u, first), [])
                if any(seen & ~reached == 0 and cost <= step for seen, cost in kept):
                    continue
                kept[:] = [
                    (seen, cost)
                    for seen, cost in kept
                    if not (reached & ~seen == 0 and step <= cost)
                ]
                kept.append((reached, step))
                queue.append((u, first, reached, step, edges | (1 << edge_id)))
    return None


def is_minimum(gt: Graft, f: EdgeSet) -> bool:
    return negative_circuit(gt, f) is None


@lru_cache(maxsize=4096)
def allowed_edges(gt: Graft) -> EdgeSet:
    """Edges lying in some minimum join."""
    graph = gt.graph
    target = nu(gt)
    allowed = 0
    for edge in graph.edges:
        without = graph.all_edges & ~(1 << edge.edge_id)
        try:
            toggled = gt.terminals ^ graph.edge_ends[edge.edge_id]
            if nu_of(graph, toggled, without) == target - 1:
                allowed |= 1 << edge.edge_id
        except InfeasibleError:
            continue
    return allowed


def factor_components(gt: Graft) -> List[VertexSet]:
    return connected_components(gt.graph, edge_window=allowed_edges(gt))


def subgraft(gt: Graft, f: EdgeSet, window: VertexSet) -> SubgraftView:
    """(G,T)_F[X]: v is a terminal when its T-membership and its F-edges leaving X
    differ in parity.

    Raises ParityError when some component of G[X] ends up with an odd number
    of terminals.
    """
    if not is_join(gt, f):
        raise NotAJoinError(f"{members(f)} is not a join")
    graph = gt.graph
    leaving = f & cut(graph, window)
    terminals = 0
    for v in members(window):
        crossing = bin(graph.incidence[v] & leaving).count("1")
        if ((gt.terminals >> v) & 1) != crossing % 2:
            terminals |= 1 << v
    components = connected_components(graph, window)
    for component in components:
        if bin(component & terminals).count("1") % 2:
            raise ParityError(
                f"component {members(component)} of the subgraft on {members(window)} "
                "holds an odd number of terminals"
            )
    logger.debug(
        "subgraft",
        window=members(window),
        terminals=members(terminals),
        components=len(components),
    )
    return SubgraftView(
        host=gt, join_edges=f, vertex_window=window, induced_terminals=terminals
    )
