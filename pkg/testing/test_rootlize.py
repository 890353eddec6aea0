import pytest
from hypothesis import given, settings

from conftest import vset
from src.application.decomposition import critical_set, default_weighting
from src.application.distance import trisection_of_roots
from src.application.rootlize import (
    extended_min_joins,
    heterogeneous_structure,
    homogeneous_structure,
    monotonicity_checks,
    root_set_profile,
    rootlize,
)
from src.domain.exceptions import (
    NotExtremeError,
    NotHomogeneousError,
    StructureViolation,
)
from src.domain.models import StatementVerdict, VerdictReport
from strategies import grafts


def test_rootlize_appends_the_gadget(cycle4_all):
    rl = rootlize(cycle4_all, vset("ac"))
    assert (rl.root, rl.attachment, rl.rs_edge) == (4, 5, 4)
    assert rl.extended.vertex_count == 6
    assert rl.extended.edge_count == 7
    assert rl.mount_edges == ((0, 5), (2, 6))
    assert rl.extended.terminals == 0b111111
    assert rl.gadget_edges == 0b1110000
    assert rl.restrict(rl.lift(0b0101)) == 0b0101


def test_extended_joins_are_lifted_base_joins(cycle4_all):
    report = extended_min_joins(rootlize(cycle4_all, vset("ac")))
    assert report.passed
    assert (report.base_nu, report.extended_nu) == (2, 3)
    assert sorted(report.extended_joins) == [0b10101, 0b11010]


def test_rootlize_rejects_bad_mounts(path3):
    with pytest.raises(ValueError):
        rootlize(path3, 0)
    with pytest.raises(NotExtremeError):
        rootlize(path3, vset("ac"))


def test_root_set_profile_of_a_color_class(cycle4_all):
    result = root_set_profile(cycle4_all, default_weighting(cycle4_all), vset("ac"))
    assert result.dist == (0, -1, 0, -1)
    assert (result.a, result.d, result.c) == (vset("ac"), vset("bd"), 0)


def test_homogeneous_structure_of_cycle4_all(cycle4_all):
    structure = homogeneous_structure(cycle4_all, vset("ac"))
    assert structure.classes == [vset("ac")]
    assert structure.atlas.entries[0].critical == vset("bd")


def test_homogeneous_structure_refuses_mixed_colors(cycle4_empty):
    with pytest.raises(NotHomogeneousError):
        homogeneous_structure(cycle4_empty, vset("ab"))


def test_heterogeneous_structure_splits_by_color(cycle4_empty):
    structure = heterogeneous_structure(cycle4_empty, vset("ab"))
    assert structure.bi_extreme
    assert structure.side_a.trisection.a == vset("a")
    assert structure.side_b.trisection.a == vset("b")
    assert structure.combined.trisection.a == vset("ab")
    assert structure.combined.trisection.d == 0


def test_heterogeneous_structure_of_one_sided_roots(cycle4_all):
    structure = heterogeneous_structure(cycle4_all, vset("ac"))
    assert structure.side_b is None
    assert structure.side_a is structure.combined


def test_monotonicity_on_worked_examples(worked_examples):
    for gt in worked_examples:
        for root in range(gt.vertex_count):
            report = monotonicity_checks(gt, 1 << root)
            assert report.passed, report.failures


def test_monotonicity_labels_follow_the_root_count(cycle4_all):
    single = {v.label for v in monotonicity_checks(cycle4_all, vset("a")).verdicts}
    several = {v.label for v in monotonicity_checks(cycle4_all, vset("ac")).verdicts}
    assert "root-a-union" in single and "initial-disjoint" not in several
    assert "root-set-d-union" in several


def test_verdict_report_raises_the_first_failure():
    report = VerdictReport(
        (StatementVerdict("ok", True), StatementVerdict("broken", False, {"x": 1}))
    )
    with pytest.raises(StructureViolation) as info:
        report.raise_for_failures()
    assert info.value.witness == {"label": "broken", "x": 1}


@settings(max_examples=40, deadline=None)
@given(grafts(max_vertices=6, max_extra_edges=3))
def test_monotonicity_holds_for_every_root(gt):
    for root in range(gt.vertex_count):
        assert monotonicity_checks(gt, 1 << root).passed


@settings(max_examples=30, deadline=None)
@given(grafts(max_vertices=5, max_extra_edges=3))
def test_rootlization_keeps_joins_for_every_vertex_mount(gt):
    for root in range(gt.vertex_count):
        assert extended_min_joins(rootlize(gt, 1 << root)).passed


def test_homogeneous_structure_of_separated_roots(cycle4_empty):
    structure = homogeneous_structure(cycle4_empty, vset("bd"))
    assert sorted(structure.classes) == [vset("b"), vset("d")]
    assert all(entry.critical == 0 for entry in structure.atlas.entries)
    assert (structure.trisection.a, structure.trisection.d) == (vset("bd"), 0)


def test_heterogeneous_structure_refuses_a_non_extreme_set(cycle4_all):
    with pytest.raises(NotExtremeError):
        heterogeneous_structure(cycle4_all, vset("ab"))


def test_heterogeneous_structure_is_the_union_of_both_sides(crossed_roots):
    structure = heterogeneous_structure(crossed_roots, vset("bd"))
    assert structure.side_a.trisection.a == vset("b")
    assert structure.side_b.trisection.a == vset("d")
    assert structure.combined.trisection.a == vset("bd")
    assert structure.combined.trisection.d == 0
    assert not structure.min_distance_split


def test_minimum_distance_trisection_differs_on_crossed_roots(crossed_roots):
    w = default_weighting(crossed_roots)
    assert trisection_of_roots(crossed_roots, w, vset("bd")).a == vset("abdf")
    assert critical_set(crossed_roots, vset("a"), w) == vset("f")
