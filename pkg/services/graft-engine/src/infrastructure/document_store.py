"""Graft documents on disk: JSON objects with named vertices, edges and terminals."""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional

import structlog
from pydantic import ValidationError

from shared.data_contracts.graft import GraftDocument

from ..domain.exceptions import ParseError
from ..domain.graph import Multigraph, VertexSet, bits, members
from ..domain.models import Graft

logger = structlog.get_logger(__name__)

VERTEX_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def default_names(n: int) -> List[str]:
    """Single letters while they last, then v0, v1, ..."""
    if n <= len(VERTEX_LETTERS):
        return list(VERTEX_LETTERS[:n])
    return [f"v{i}" for i in range(n)]


@dataclass(frozen=True)
class NamedGraft:
    """A dense graft with the name table of its document."""

    graft: Graft
    names: tuple

    @property
    def index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def vertex(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise ParseError(f"unknown vertex: {name}") from None

    def vertex_set(self, names: Iterable[str]) -> VertexSet:
        return bits(self.vertex(name) for name in names)

    def names_of(self, mask: VertexSet) -> List[str]:
        return [self.names[v] for v in members(mask)]

    def edge_label(self, edge_id: int) -> str:
        u, v = self.graft.graph.ends(edge_id)
        left, right = self.names[u], self.names[v]
        if len(left) == 1 and len(right) == 1:
            return left + right
        return f"{left}-{right}"

    def edge_labels(self, edge_set: int) -> List[str]:
        return [self.edge_label(e) for e in members(edge_set)]

    def to_document(self) -> GraftDocument:
        return GraftDocument(
            vertices=list(self.names),
            edges=[(self.names[e.u], self.names[e.v]) for e in self.graft.graph.edges],
            terminals=self.names_of(self.graft.terminals),
            allow_disconnected=self.graft.allow_disconnected,
        )


def parse_document(text: str) -> GraftDocument:
    try:
        return GraftDocument.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"malformed graft document: {e.errors()[0]['msg']}") from e


def to_graft(
    doc: GraftDocument, allow_disconnected: Optional[bool] = None
) -> NamedGraft:
    """Dense graft in document order; parity and connectivity are checked here."""
    index = {name: i for i, name in enumerate(doc.vertices)}
    pairs = [(index[u], index[v]) for u, v in doc.edges]
    graph = Multigraph.from_pairs(len(doc.vertices), pairs)
    flag = doc.allow_disconnected if allow_disconnected is None else allow_disconnected
    graft = Graft(graph, bits(index[t] for t in doc.terminals), flag)
    return NamedGraft(graft=graft, names=tuple(doc.vertices))


def from_graft(graft: Graft, names: Optional[List[str]] = None) -> NamedGraft:
    labels = names or default_names(graft.vertex_count)
    return NamedGraft(graft=graft, names=tuple(labels))


def load(path: str, allow_disconnected: Optional[bool] = None) -> NamedGraft:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from e
    named = to_graft(parse_document(text), allow_disconnected)
    logger.debug(
        "graft loaded",
        path=path,
        vertices=named.graft.vertex_count,
        edges=named.graft.edge_count,
        digest=named.graft.digest(),
    )
    return named


def dump(doc: GraftDocument) -> str:
    return doc.model_dump_json(indent=2) + "\n"


def save(doc: GraftDocument, path: str) -> None:
    Path(path).write_text(dump(doc), encoding="utf-8")
    logger.debug("graft saved", path=path, vertices=len(doc.vertices))
