import json

import pytest

from src.infrastructure.document_store import from_graft, save
from src.interfaces.cli import main


@pytest.fixture
def write_doc(tmp_path):
    def write(gt, name="graft.json"):
        target = tmp_path / name
        save(from_graft(gt).to_document(), str(target))
        return str(target)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve(capsys, write_doc, path3):
    code, out, _ = run(capsys, "solve", write_doc(path3))
    assert code == 0
    assert out == "nu = 2; join = ab, bc; allowed = ab, bc\n"


def test_solve_json(capsys, write_doc, cycle4_all):
    code, out, _ = run(capsys, "solve", write_doc(cycle4_all), "--json")
    assert code == 0
    assert json.loads(out) == {
        "allowed": ["ab", "bc", "cd", "da"],
        "join": ["ab", "cd"],
        "nu": 2,
    }


def test_dist_with_path(capsys, write_doc, path3):
    code, out, _ = run(capsys, "dist", write_doc(path3), "--root", "a", "--from", "c")
    assert code == 0
    assert out.splitlines() == [
        "a 0",
        "b -1",
        "c -2",
        "dist(c, a) = -2; path = c, b, a",
    ]


def test_decompose(capsys, write_doc, path3):
    code, out, _ = run(capsys, "decompose", write_doc(path3), "--root", "a")
    assert code == 0
    assert out.splitlines() == [
        "level -2: {c}",
        "level -1: {b, c}",
        "level 0: {a, b, c} capital",
        "A = {a}; D = {b, c}; C = {}",
    ]


def test_decompose_json(capsys, write_doc, cycle4_empty):
    code, out, _ = run(
        capsys, "decompose", write_doc(cycle4_empty), "--root", "a", "--json"
    )
    assert code == 0
    result = json.loads(out)
    assert result["distances"] == [["a", 0], ["b", 1], ["c", 2], ["d", 1]]
    assert (result["a"], result["d"], result["c"]) == (["a"], [], ["b", "c", "d"])


def test_kl(capsys, write_doc, cycle4_all):
    code, out, _ = run(capsys, "kl", write_doc(cycle4_all))
    assert code == 0
    assert out.splitlines() == [
        "factor components: {a, b, c, d}",
        "classes: {a, c}, {b, d}",
    ]


def test_critical(capsys, write_doc, cycle4_all):
    code, out, _ = run(capsys, "critical", write_doc(cycle4_all), "--class-of", "c")
    assert code == 0
    assert out == "class = {a, c}; critical = {b, d}\n"


def test_rootlize_prints_the_extended_document(capsys, write_doc, cycle4_all):
    code, out, _ = run(capsys, "rootlize", write_doc(cycle4_all), "--mount", "a,c")
    assert code == 0
    doc = json.loads(out)
    assert doc["vertices"] == ["a", "b", "c", "d", "r", "s"]
    assert doc["edges"][4:] == [["r", "s"], ["s", "a"], ["s", "c"]]


def test_rootlize_emit(capsys, write_doc, cycle4_all, tmp_path):
    target = tmp_path / "extended.json"
    code, out, _ = run(
        capsys,
        "rootlize",
        write_doc(cycle4_all),
        "--mount",
        "a,c",
        "--emit",
        str(target),
    )
    assert code == 0
    assert out == "nu = 2 -> 3; A = {a, c, r}; D = {b, d, s}\n"
    emitted = json.loads(target.read_text(encoding="utf-8"))
    assert emitted["terminals"][-2:] == ["r", "s"]


def test_rootlize_rejects_a_non_extreme_mount(capsys, write_doc, path3):
    code, _, err = run(capsys, "rootlize", write_doc(path3), "--mount", "a,c")
    assert code == 1
    assert err.startswith("error:")


def test_parse_error_exit_code(capsys, tmp_path):
    target = tmp_path / "broken.json"
    target.write_text('{"vertices": ["a"], "edges": [["a", "b"]]}', encoding="utf-8")
    code, out, err = run(capsys, "solve", str(target))
    assert code == 2
    assert out == ""
    assert "error:" in err


def test_parity_error_exit_code(capsys, tmp_path):
    target = tmp_path / "odd.json"
    target.write_text(
        '{"vertices": ["a", "b"], "edges": [["a", "b"]], "terminals": ["a"]}',
        encoding="utf-8",
    )
    code, _, _ = run(capsys, "solve", str(target))
    assert code == 3


def test_verify_file(capsys, write_doc, cycle4_ac):
    code, out, _ = run(capsys, "verify", write_doc(cycle4_ac))
    assert code == 0
    assert out.splitlines()[-1] == "instances = 1; failed = 0"


def test_verify_literal_sign_reports_a_failure(capsys, write_doc, single_edge):
    code, out, _ = run(
        capsys,
        "verify",
        write_doc(single_edge),
        "--checks",
        "fact1-sign",
        "--literal-sign",
    )
    assert code == 1
    assert "fact1-sign: passed=0 failed=1 skipped=0" in out
    assert "  witness: " in out


def test_verify_enumeration_report_and_metrics(capsys, tmp_path):
    report = tmp_path / "report.json"
    metrics = tmp_path / "metrics.prom"
    code, out, _ = run(
        capsys,
        "verify",
        "--enumerate",
        "3",
        "--max-edges",
        "3",
        "--checks",
        "oracle-nu,icomp",
        "--report",
        str(report),
        "--metrics-file",
        str(metrics),
        "--json",
    )
    assert code == 0
    summary = json.loads(report.read_text(encoding="utf-8"))
    assert summary == json.loads(out)
    assert summary["instances"] == 14
    assert summary["checks"]["icomp"]["failed"] == 0
    assert "graft_check_verdicts_total" in metrics.read_text(encoding="utf-8")


def test_verify_unknown_check(capsys, write_doc, path3):
    code, _, err = run(capsys, "verify", write_doc(path3), "--checks", "nope")
    assert code == 2
    assert "unknown check id" in err


def test_verify_needs_an_instance_source(capsys):
    code, _, _ = run(capsys, "verify")
    assert code == 1


def test_verify_enumeration_above_the_cap(capsys):
    code, _, err = run(capsys, "verify", "--enumerate", "8")
    assert code == 4
    assert "capped at 7 vertices" in err


def test_gen_is_seeded(capsys):
    argv = (
        "gen", "--random", "--seed", "4", "--vertices", "5", "--edges", "6", "--any"
    )
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    doc = json.loads(first)
    assert doc["vertices"] == ["a", "b", "c", "d", "e"]
    assert len(doc["edges"]) == 6
    assert len(doc["terminals"]) % 2 == 0


def test_gen_without_terminals(capsys):
    code, out, _ = run(
        capsys,
        "gen",
        "--random",
        "--vertices",
        "4",
        "--edges",
        "3",
        "--terminals",
        "none",
    )
    assert code == 0
    assert json.loads(out)["terminals"] == []


def test_export_dot(capsys, write_doc, path3):
    code, out, _ = run(capsys, "export", write_doc(path3), "--root", "a")
    assert code == 0
    assert out.startswith("graph graft {")
    assert "// level -2" in out
