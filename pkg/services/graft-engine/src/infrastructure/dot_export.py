"""Graph drawing source for a graft seen from a root."""

from typing import List

from ..domain.graph import members
from ..domain.models import DistanceProfile, Weighting
from .document_store import NamedGraft


def _quote(name: str) -> str:
    return '"%s"' % name.replace('"', '\\"')


def to_dot(named: NamedGraft, prof: DistanceProfile, w: Weighting) -> str:
    """Levels become ranks, join edges are bold, terminals are double circles."""
    graft = named.graft
    out: List[str] = [
        "graph graft {",
        "graph [",
        "rankdir=TB,",
        "];",
        'node [shape="circle"];',
    ]
    for v, name in enumerate(named.names):
        shape = "doublecircle" if (graft.terminals >> v) & 1 else "circle"
        out.append(
            '%s [shape="%s", xlabel="%d"];' % (_quote(name), shape, prof.dist[v])
        )
    for index, level in sorted(prof.levels.items()):
        ranked = " ".join(_quote(named.names[v]) for v in members(level))
        out.append("{ rank=same; %s } // level %d" % (ranked, index))
    for edge in graft.graph.edges:
        style = "bold" if (w.join_edges >> edge.edge_id) & 1 else "solid"
        out.append(
            '%s -- %s [label="%s", style="%s"];'
            % (
                _quote(named.names[edge.u]),
                _quote(named.names[edge.v]),
                named.edge_label(edge.edge_id),
                style,
            )
        )
    out.append("}")
    return "\n".join(out) + "\n"
