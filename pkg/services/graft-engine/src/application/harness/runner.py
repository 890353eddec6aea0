"""Run registered checks over single grafts and whole instance streams."""

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import structlog

from shared.data_contracts.verification import (
    CheckReport,
    CheckTally,
    InstanceSpec,
    SuiteSummary,
    Verdict,
)
from shared.monitoring.telemetry import MetricsCollector

from ...domain.exceptions import GraftError, SizeCapError, StructureViolation
from ...domain.graph import Multigraph
from ...domain.models import Graft
from ...infrastructure.document_store import from_graft
from ...infrastructure.generators import instances
from ..distance import is_extreme_literal
from .checks import CheckContext, registry

logger = structlog.get_logger(__name__)

INTERPRETATION_NOTES = [
    "extreme: dist(x, y) >= 0 is required for x, y inside the set X only",
    "cut parity: |cut(K) ∩ F| = 0 exactly for the component holding the root",
    "distance orientation: dist(x, y) = nu(T Δ {x, y}) - nu(T)",
    "capital steps: K is the capital component at i, L the one at i + 1, N = N(K)",
    "neighbor positivity: L is the capital component at level i",
    "D-union: D_R is the union of D_x over x in A_R",
    "round ear paths have at least two edges",
    "path cut: a component without the root meets the join in exactly one cut edge",
    "mixed-color roots: the combined structure is the union of the per-color ones;"
    " min-distance disagreement is counted, not failed",
]

InstancePayload = Tuple[int, Tuple[Tuple[int, int], ...], int, bool, bool]


def run_check(
    gt: Graft,
    check_id: str,
    literal_sign: bool = False,
    context: Optional[CheckContext] = None,
) -> CheckReport:
    """One check on one graft; violations become fail, caps become skipped."""
    definition = registry.get(check_id)
    ctx = context or CheckContext(gt, literal_sign=literal_sign)
    digest = gt.digest()
    if definition.bipartite_only and not ctx.bipartite:
        return CheckReport(
            check_id=check_id,
            instance=digest,
            verdict=Verdict.SKIPPED,
            message="requires a bipartite graft",
        )
    start_time = time.perf_counter()
    verdict, message, witness = Verdict.PASS, None, None
    try:
        definition.run(ctx)
    except SizeCapError as e:
        verdict, message = Verdict.SKIPPED, str(e)
    except StructureViolation as e:
        verdict, message = Verdict.FAIL, str(e)
        document = from_graft(gt).to_document().model_dump(mode="json")
        witness = {"graft": document, **e.witness}
    except GraftError as e:
        verdict, message = Verdict.FAIL, f"{type(e).__name__}: {e}"
        witness = {"graft": from_graft(gt).to_document().model_dump(mode="json")}
    except Exception as e:
        logger.exception("check raised", check_id=check_id, instance=digest)
        verdict, message = Verdict.FAIL, f"{type(e).__name__}: {e}"
        witness = {
            "graft": from_graft(gt).to_document().model_dump(mode="json"),
            "error": type(e).__name__,
        }
    seconds = time.perf_counter() - start_time
    if verdict == Verdict.FAIL:
        logger.warning(
            "check failed", check_id=check_id, instance=digest, reason=message
        )
    return CheckReport(
        check_id=check_id,
        instance=digest,
        verdict=verdict,
        message=message,
        witness=witness,
        seconds=seconds,
    )


def run_checks(
    gt: Graft, check_ids: Sequence[str], literal_sign: bool = False
) -> List[CheckReport]:
    """Every requested check on one graft, sharing one context."""
    ctx = CheckContext(gt, literal_sign=literal_sign)
    return [run_check(gt, check_id, literal_sign, ctx) for check_id in check_ids]


def _payload(gt: Graft, literal_sign: bool) -> InstancePayload:
    pairs = tuple((edge.u, edge.v) for edge in gt.graph.edges)
    return gt.vertex_count, pairs, gt.terminals, gt.allow_disconnected, literal_sign


def _check_instance(
    payload: InstancePayload, check_ids: Sequence[str]
) -> Tuple[List[CheckReport], Dict[str, int]]:
    n, pairs, terminals, allow_disconnected, literal_sign = payload
    gt = Graft(Multigraph.from_pairs(n, pairs), terminals, allow_disconnected)
    ctx = CheckContext(gt, literal_sign=literal_sign)
    reports = [run_check(gt, check_id, literal_sign, ctx) for check_id in check_ids]
    try:
        if is_extreme_literal(gt):
            ctx.note("extreme_over_all_vertices")
    except GraftError:
        pass
    return reports, ctx.diagnostics


class _InstanceWorker:
    """Picklable callable binding the check list for pool workers."""

    def __init__(self, check_ids: Sequence[str]) -> None:
        self.check_ids = list(check_ids)

    def __call__(
        self, payload: InstancePayload
    ) -> Tuple[List[CheckReport], Dict[str, int]]:
        return _check_instance(payload, self.check_ids)


def run_grafts(
    grafts: Iterable[Graft],
    check_ids: Optional[Sequence[str]] = None,
    workers: int = 1,
    literal_sign: bool = False,
    timings: bool = False,
    spec: Optional[InstanceSpec] = None,
    generator: str = "file",
) -> SuiteSummary:
    """Run checks over grafts and merge reports in instance order."""
    ids = registry.ids if check_ids is None else list(check_ids)
    for check_id in ids:
        registry.get(check_id)
    tallies: Dict[str, CheckTally] = {
        check_id: CheckTally(statement=registry.get(check_id).statement)
        for check_id in ids
    }
    summary = SuiteSummary(
        spec=spec,
        checks=tallies,
        notes=list(INTERPRETATION_NOTES),
        literal_sign=literal_sign,
    )
    if not ids:
        return summary

    payloads = (_payload(gt, literal_sign) for gt in grafts)
    worker = _InstanceWorker(ids)
    diagnostics: Dict[str, int] = {
        "extreme_over_all_vertices": 0,
        "hetero_min_distance_split_differs": 0,
    }
    start_time = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(worker, payloads, chunksize=16))
    else:
        results = (worker(payload) for payload in payloads)

    for reports, noted in results:
        summary.instances += 1
        MetricsCollector.record_instance(generator)
        for key, count in noted.items():
            diagnostics[key] = diagnostics.get(key, 0) + count
        for report in reports:
            MetricsCollector.record_check(
                report.check_id, report.verdict.value, report.seconds
            )
            if not timings:
                report = report.model_copy(update={"seconds": None})
            tallies[report.check_id].add(report)

    summary.diagnostics = dict(sorted(diagnostics.items()))
    logger.info(
        "suite finished",
        instances=summary.instances,
        failed=summary.failed,
        checks=len(ids),
        seconds=round(time.perf_counter() - start_time, 3),
    )
    return summary


def run_suite(
    spec: InstanceSpec,
    check_ids: Optional[Sequence[str]] = None,
    workers: int = 1,
    literal_sign: bool = False,
    timings: bool = False,
) -> SuiteSummary:
    """Run checks over the instance stream described by ``spec``."""
    return run_grafts(
        instances(spec),
        check_ids,
        workers=workers,
        literal_sign=literal_sign,
        timings=timings,
        spec=spec,
        generator=spec.generator.value,
    )
