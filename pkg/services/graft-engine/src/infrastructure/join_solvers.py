"""Join solver strategies: terminal pairing and exhaustive scan."""

from collections import deque
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

import numpy as np
import structlog

from ..domain.exceptions import InfeasibleError, SizeCapError
from ..domain.graph import EdgeSet, Multigraph, VertexSet, connected_components, members
from ..domain.models import JoinSolver

logger = structlog.get_logger(__name__)

MAX_PAIRING_TERMINALS = 20
BRUTEFORCE_MAX_EDGES = 20


def _window_of(graph: Multigraph, edge_window: Optional[EdgeSet]) -> EdgeSet:
    return graph.all_edges if edge_window is None else edge_window & graph.all_edges


def hop_tree(
    graph: Multigraph, source: int, window: EdgeSet
) -> Tuple[List[int], List[int]]:
    """Breadth-first hop counts from source and the edge used to reach each vertex."""
    hops = [-1] * graph.vertex_count
    via = [-1] * graph.vertex_count
    hops[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w, edge_id in graph.adjacency[v]:
            if hops[w] == -1 and (window >> edge_id) & 1:
                hops[w] = hops[v] + 1
                via[w] = edge_id
                queue.append(w)
    return hops, via


def min_cost_pairing(table: np.ndarray) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """Minimum-cost perfect pairing of the rows of a symmetric cost table.

    Dynamic programming over subsets; the lowest unpaired index is always
    matched first so each subset is solved once.
    """
    size = table.shape[0]
    if size % 2:
        raise ValueError("cannot pair an odd number of terminals")

    @lru_cache(maxsize=None)
    def best(mask: int) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
        if not mask:
            return 0, ()
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        choice: Optional[Tuple[int, Tuple[Tuple[int, int], ...]]] = None
        for j in members(rest):
            cost, pairs = best(rest ^ (1 << j))
            cost += int(table[i, j])
            if choice is None or cost < choice[0]:
                choice = (cost, ((i, j),) + pairs)
        assert choice is not None
        return choice

    return best((1 << size) - 1)


class PairingJoinSolver(JoinSolver):
    """Minimum joins from an optimal pairing of terminals by hop distance.

    The symmetric difference of shortest paths realizing a minimum-cost
    pairing is a join whose size equals the pairing cost.
    """

    @property
    def name(self) -> str:
        return "pairing"

    def _component_terminals(
        self, graph: Multigraph, terminals: VertexSet, window: EdgeSet
    ) -> Iterator[List[int]]:
        for component in connected_components(graph, edge_window=window):
            local = members(terminals & component)
            if len(local) % 2:
                raise InfeasibleError(
                    f"component {members(component)} holds {len(local)} terminals"
                )
            if len(local) > MAX_PAIRING_TERMINALS:
                raise SizeCapError(
                    f"{len(local)} terminals exceed the pairing cap "
                    f"of {MAX_PAIRING_TERMINALS}"
                )
            if local:
                yield local

    def _solve(
        self, graph: Multigraph, terminals: VertexSet, window: EdgeSet, realize: bool
    ) -> Tuple[int, EdgeSet]:
        total = 0
        join = 0
        for local in self._component_terminals(graph, terminals, window):
            trees = [hop_tree(graph, t, window) for t in local]
            table = np.array(
                [[trees[i][0][t] for t in local] for i in range(len(local))],
                dtype=np.int64,
            )
            cost, pairs = min_cost_pairing(table)
            total += cost
            if not realize:
                continue
            for i, j in pairs:
                _, via = trees[i]
                v = local[j]
                while v != local[i]:
                    edge_id = via[v]
                    join ^= 1 << edge_id
                    v = graph.edges[edge_id].other(v)
        return total, join

    def nu(
        self,
        graph: Multigraph,
        terminals: VertexSet,
        edge_window: Optional[EdgeSet] = None,
    ) -> int:
        return self._solve(graph, terminals, _window_of(graph, edge_window), False)[0]

    def find_join(
        self,
        graph: Multigraph,
        terminals: VertexSet,
        edge_window: Optional[EdgeSet] = None,
    ) -> EdgeSet:
        cost, join = self._solve(graph, terminals, _window_of(graph, edge_window), True)
        if bin(join).count("1") != cost:
            logger.error("pairing join size mismatch", cost=cost, join=members(join))
            raise AssertionError("realized join does not match the pairing cost")
        return join


def spanning_forest(
    graph: Multigraph, window: EdgeSet
) -> Tuple[List[List[int]], List[int]]:
    """Breadth-first trees of the window.

    Returns the vertices of each tree by depth and the parent edge per vertex.
    """
    parent = [-1] * graph.vertex_count
    trees: List[List[int]] = []
    seen = 0
    for source in range(graph.vertex_count):
        if (seen >> source) & 1:
            continue
        hops, via = hop_tree(graph, source, window)
        reached = (v for v in range(graph.vertex_count) if hops[v] >= 0)
        tree = sorted(reached, key=hops.__getitem__)
        for v in tree:
            seen |= 1 << v
            parent[v] = via[v]
        trees.append(tree)
    return trees, parent


def join_and_circuit_basis(
    graph: Multigraph, terminals: VertexSet, window: EdgeSet
) -> Tuple[EdgeSet, List[EdgeSet]]:
    """A join inside the window and the fundamental circuits of a spanning forest.

    Every join of the window is the returned join plus a sum of basis circuits.
    """
    trees, parent = spanning_forest(graph, window)
    to_root = [0] * graph.vertex_count
    tree_edges = 0
    join = 0
    odd = terminals
    for tree in trees:
        for v in tree[1:]:
            edge_id = parent[v]
            to_root[v] = to_root[graph.edges[edge_id].other(v)] | (1 << edge_id)
            tree_edges |= 1 << edge_id
        for v in reversed(tree[1:]):
            if (odd >> v) & 1:
                join ^= 1 << parent[v]
                odd ^= graph.edge_ends[parent[v]]
        if (odd >> tree[0]) & 1:
            raise InfeasibleError(
                f"component {sorted(tree)} holds an odd number of terminals"
            )
    basis = []
    for edge_id in members(window & ~tree_edges):
        u, v = graph.ends(edge_id)
        basis.append((1 << edge_id) | (to_root[u] ^ to_root[v]))
    return join, basis


class BruteForceJoinSolver(JoinSolver):
    """Exhaustive scan of every join in Gray-code order over the cycle space."""

    def __init__(self, edge_cap: int = BRUTEFORCE_MAX_EDGES) -> None:
        self.edge_cap = min(edge_cap, BRUTEFORCE_MAX_EDGES)

    @property
    def name(self) -> str:
        return "bruteforce"

    def minimum_joins(
        self,
        graph: Multigraph,
        terminals: VertexSet,
        edge_window: Optional[EdgeSet] = None,
    ) -> Tuple[int, List[EdgeSet]]:
        """ν and every minimum join, sorted by their edge id sequences."""
        window = _window_of(graph, edge_window)
        edge_count = bin(window).count("1")
        if edge_count > self.edge_cap:
            raise SizeCapError(
                f"{edge_count} edges exceed the brute-force cap of {self.edge_cap}"
            )
        current, basis = join_and_circuit_basis(graph, terminals, window)
        best = bin(current).count("1")
        joins = [current]
        for step in range(1, 1 << len(basis)):
            current ^= basis[(step & -step).bit_length() - 1]
            size = bin(current).count("1")
            if size < best:
                best, joins = size, [current]
            elif size == best:
                joins.append(current)
        joins.sort(key=members)
        return best, joins

    def nu(
        self,
        graph: Multigraph,
        terminals: VertexSet,
        edge_window: Optional[EdgeSet] = None,
    ) -> int:
        return self.minimum_joins(graph, terminals, edge_window)[0]

    def find_join(
        self,
        graph: Multigraph,
        terminals: VertexSet,
        edge_window: Optional[EdgeSet] = None,
    ) -> EdgeSet:
        return self.minimum_joins(graph, terminals, edge_window)[1][0]
