import pytest
from pydantic import ValidationError

from conftest import vset
from shared.data_contracts.graft import GraftDocument
from src.application.decomposition import default_weighting
from src.application.distance import profile
from src.domain.exceptions import DisconnectedError, ParityError, ParseError
from src.infrastructure.document_store import (
    default_names,
    dump,
    from_graft,
    load,
    parse_document,
    save,
    to_graft,
)
from src.infrastructure.dot_export import to_dot

PATH_DOC = (
    '{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]], '
    '"terminals": ["a", "c"]}'
)


def test_parse_and_convert():
    named = to_graft(parse_document(PATH_DOC))
    assert named.graft.vertex_count == 3
    assert named.graft.terminals == vset("ac")
    assert named.edge_labels(0b11) == ["ab", "bc"]
    assert named.vertex("c") == 2


def test_unknown_vertex_name():
    named = to_graft(parse_document(PATH_DOC))
    with pytest.raises(ParseError):
        named.vertex("z")


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"vertices": []}',
        '{"vertices": ["a", "a"]}',
        '{"vertices": ["a"], "edges": [["a", "a"]]}',
        '{"vertices": ["a", "b"], "edges": [["a", "x"]]}',
        '{"vertices": ["a", "b"], "terminals": ["a", "a"]}',
    ],
)
def test_malformed_documents(text):
    with pytest.raises(ParseError):
        parse_document(text)


def test_document_validation_errors_are_pydantic_errors():
    with pytest.raises(ValidationError):
        GraftDocument(vertices=["a"], terminals=["b"])


def test_parity_and_connectivity_are_checked_on_conversion():
    odd = GraftDocument(vertices=["a", "b"], edges=[("a", "b")], terminals=["a"])
    with pytest.raises(ParityError):
        to_graft(odd)
    apart = GraftDocument(vertices=["a", "b"])
    with pytest.raises(DisconnectedError):
        to_graft(apart)
    assert len(to_graft(apart, allow_disconnected=True).graft.components) == 2


def test_long_names_use_dashed_edge_labels():
    doc = GraftDocument(vertices=["left", "right"], edges=[("left", "right")])
    assert to_graft(doc).edge_label(0) == "left-right"


def test_default_names():
    assert default_names(3) == ["a", "b", "c"]
    assert default_names(27)[:2] == ["v0", "v1"]


def test_save_and_load(tmp_path, path3):
    target = tmp_path / "path.json"
    save(from_graft(path3).to_document(), str(target))
    named = load(str(target))
    assert named.graft == path3
    assert dump(named.to_document()) == target.read_text(encoding="utf-8")


def test_missing_file():
    with pytest.raises(ParseError):
        load("/nonexistent/graft.json")


def test_dot_source_marks_terminals_levels_and_join(path3):
    named = from_graft(path3)
    w = default_weighting(path3)
    source = to_dot(named, profile(path3, w, 0), w)
    assert source.startswith("graph graft {")
    assert '"a" [shape="doublecircle", xlabel="0"];' in source
    assert '"b" [shape="circle", xlabel="-1"];' in source
    assert '{ rank=same; "c" } // level -2' in source
    assert '"a" -- "b" [label="ab", style="bold"];' in source
    assert source.endswith("}\n")


def test_repeated_pairs_are_parallel_edges():
    doc = GraftDocument(vertices=["a", "b"], edges=[("a", "b"), ("a", "b")])
    named = to_graft(doc)
    assert named.graft.edge_count == 2
    assert named.edge_labels(0b11) == ["ab", "ab"]
