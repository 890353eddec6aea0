"""Command line surface of the graft engine.

Subcommands: solve, dist, decompose, kl, critical, rootlize, verify, gen, export.
"""

import argparse
import json
import sys
from typing import Any, Callable, List, Optional, Sequence

import structlog

from shared.data_contracts.graft import (
    ClassRecord,
    ComponentRecord,
    DecompositionResult,
    DistanceRow,
    JoinResult,
    PartitionResult,
    RootlizationResult,
)
from shared.data_contracts.verification import GeneratorKind, InstanceSpec, SuiteSummary
from shared.monitoring.telemetry import MetricsCollector, setup_structured_logging

from ..application.decomposition import (
    critical_set,
    default_weighting,
    kl_classes,
    neicomp,
)
from ..application.distance import (
    distance_components,
    distance_with_path,
    profile,
    trisection_of,
)
from ..application.harness.checks import registry
from ..application.harness.runner import run_grafts, run_suite
from ..application.join_solver import allowed_edges, min_join, nu
from ..application.rootlize import rootlize
from ..domain.exceptions import GraftError
from ..domain.graph import lowest
from ..infrastructure import config
from ..infrastructure.document_store import NamedGraft, dump, from_graft, load, save
from ..infrastructure.dot_export import to_dot
from ..infrastructure.generators import random_graft

logger = structlog.get_logger(__name__)


def _braces(names: List[str]) -> str:
    return "{" + ", ".join(names) + "}"


def _emit_json(payload: Any) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False))


def _fresh_name(base: str, taken: Sequence[str]) -> str:
    if base not in taken:
        return base
    index = 0
    while f"{base}{index}" in taken:
        index += 1
    return f"{base}{index}"


def _load(args: argparse.Namespace) -> NamedGraft:
    return load(args.file, allow_disconnected=True if args.allow_disconnected else None)


def cmd_solve(args: argparse.Namespace) -> int:
    named = _load(args)
    certificate = min_join(named.graft)
    result = JoinResult(
        nu=certificate.size,
        join=named.edge_labels(certificate.edges),
        allowed=named.edge_labels(allowed_edges(named.graft)),
    )
    if args.json:
        _emit_json(result.model_dump(mode="json"))
    else:
        print(
            f"nu = {result.nu}; join = {', '.join(result.join)}; "
            f"allowed = {', '.join(result.allowed)}"
        )
    return 0


def cmd_dist(args: argparse.Namespace) -> int:
    named = _load(args)
    gt = named.graft
    root = named.vertex(args.root)
    w = default_weighting(gt)
    prof = profile(gt, w, root)
    path = None
    if args.source is not None:
        _, witness = distance_with_path(gt, w, named.vertex(args.source), root)
        path = [named.names[v] for v in witness.vertices]
    row = DistanceRow(
        root=args.root,
        distances=[(name, prof.dist[v]) for v, name in enumerate(named.names)],
        path=path,
    )
    if args.json:
        _emit_json(row.model_dump(mode="json"))
        return 0
    for name, value in row.distances:
        print(f"{name} {value}")
    if path is not None:
        weight = prof.dist[named.vertex(args.source)]
        print(f"dist({args.source}, {args.root}) = {weight}; path = {', '.join(path)}")
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    named = _load(args)
    gt = named.graft
    root = named.vertex(args.root)
    prof = profile(gt, default_weighting(gt), root)
    family = distance_components(prof, gt)
    tri = trisection_of(prof, family, gt)
    result = DecompositionResult(
        root=args.root,
        distances=[(name, prof.dist[v]) for v, name in enumerate(named.names)],
        components=[
            ComponentRecord(
                index=c.index, vertices=named.names_of(c.vertices), capital=c.capital
            )
            for c in family.components
        ],
        initial=named.names_of(tri.initial),
        a=named.names_of(tri.a),
        d=named.names_of(tri.d),
        c=named.names_of(tri.c),
    )
    if args.json:
        _emit_json(result.model_dump(mode="json"))
        return 0
    for component in result.components:
        flag = " capital" if component.capital else ""
        print(f"level {component.index}: {_braces(component.vertices)}{flag}")
    print(f"A = {_braces(result.a)}; D = {_braces(result.d)}; C = {_braces(result.c)}")
    return 0


def cmd_kl(args: argparse.Namespace) -> int:
    named = _load(args)
    partition = kl_classes(named.graft)
    result = PartitionResult(
        classes=[ClassRecord(klass=named.names_of(k)) for k in partition.classes],
        factor_components=[named.names_of(c) for c in partition.factor_components],
    )
    if args.json:
        _emit_json(result.model_dump(mode="json", exclude_none=True))
        return 0
    factors = ", ".join(_braces(c) for c in result.factor_components)
    print("factor components: " + factors)
    print("classes: " + ", ".join(_braces(c.klass) for c in result.classes))
    return 0


def cmd_critical(args: argparse.Namespace) -> int:
    named = _load(args)
    gt = named.graft
    partition = kl_classes(gt)
    vertex = named.vertex(args.class_of)
    klass = partition.class_of(vertex)
    w = default_weighting(gt)
    root = lowest(klass)
    record = ClassRecord(
        klass=named.names_of(klass),
        critical=named.names_of(critical_set(gt, klass, w)),
        neicomp=[named.names_of(c) for c in neicomp(gt, root, klass, w)],
    )
    result = PartitionResult(
        classes=[record],
        factor_components=[named.names_of(partition.factor_component_of(vertex))],
        root=named.names[root],
    )
    if args.json:
        _emit_json(result.model_dump(mode="json"))
        return 0
    critical = _braces(record.critical or [])
    print(f"class = {_braces(record.klass)}; critical = {critical}")
    return 0


def cmd_rootlize(args: argparse.Namespace) -> int:
    named = _load(args)
    gt = named.graft
    mount_names = [name.strip() for name in args.mount.split(",") if name.strip()]
    rl = rootlize(gt, named.vertex_set(mount_names))
    r_name = _fresh_name("r", named.names)
    s_name = _fresh_name("s", list(named.names) + [r_name])
    extended = from_graft(rl.extended, list(named.names) + [r_name, s_name])
    doc = extended.to_document()
    if args.emit:
        save(doc, args.emit)
    lifted = default_weighting(rl.extended)
    prof = profile(rl.extended, lifted, rl.root)
    tri = trisection_of(prof, distance_components(prof, rl.extended), rl.extended)
    result = RootlizationResult(
        mount=named.names_of(rl.mount),
        graft=doc,
        nu=nu(gt),
        extended_nu=nu(rl.extended),
        root_distances=[(name, prof.dist[v]) for v, name in enumerate(extended.names)],
        a=extended.names_of(tri.a),
        d=extended.names_of(tri.d),
    )
    if args.json:
        _emit_json(result.model_dump(mode="json"))
    elif args.emit:
        print(
            f"nu = {result.nu} -> {result.extended_nu}; "
            f"A = {_braces(result.a)}; D = {_braces(result.d)}"
        )
    else:
        sys.stdout.write(dump(doc))
    return 0


def _check_ids(raw: Optional[str]) -> Optional[List[str]]:
    if raw is None:
        return None
    ids = [item.strip() for item in raw.split(",") if item.strip()]
    for check_id in ids:
        registry.get(check_id)
    return ids


def _print_summary(summary: SuiteSummary) -> None:
    for note in summary.notes:
        print(f"# {note}")
    for check_id, tally in summary.checks.items():
        line = (
            f"{check_id}: passed={tally.passed} failed={tally.failed} "
            f"skipped={tally.skipped}"
        )
        if tally.seconds is not None:
            line += f" seconds={tally.seconds:.3f}"
        print(line)
        if tally.first_failure is not None:
            print(f"  first failure: {tally.first_failure.message}")
            witness = json.dumps(tally.first_failure.witness, sort_keys=True)
            print("  witness: " + witness)
    for key, value in sorted(summary.diagnostics.items()):
        print(f"{key} = {value}")
    print(f"instances = {summary.instances}; failed = {summary.failed}")


def cmd_verify(args: argparse.Namespace) -> int:
    check_ids = _check_ids(args.checks)
    workers = args.workers if args.workers is not None else config.WORKERS
    if args.file is not None:
        named = _load(args)
        summary = run_grafts(
            [named.graft],
            check_ids,
            workers=1,
            literal_sign=args.literal_sign,
            timings=args.timings,
        )
    else:
        if args.enumerate is not None:
            spec = InstanceSpec(
                generator=GeneratorKind.ENUMERATE,
                max_vertices=args.enumerate,
                max_edges=args.max_edges if args.max_edges is not None else 8,
                allow_parallel=args.parallel,
                bipartite_only=not args.any,
            )
        elif args.random is not None:
            spec = InstanceSpec(
                generator=GeneratorKind.RANDOM,
                count=args.random,
                seed=args.seed,
                max_vertices=args.vertices,
                max_edges=args.max_edges if args.max_edges is not None else 14,
                allow_parallel=args.parallel,
                bipartite_only=not args.any,
            )
        else:
            raise GraftError("verify needs FILE, --enumerate N or --random COUNT")
        summary = run_suite(
            spec,
            check_ids,
            workers=workers,
            literal_sign=args.literal_sign,
            timings=args.timings,
        )

    payload = summary.model_dump(mode="json", exclude_none=True)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, sort_keys=True, indent=2, ensure_ascii=False)
            handle.write("\n")
    metrics_file = args.metrics_file or config.METRICS_FILE
    if metrics_file:
        MetricsCollector.write(metrics_file)
    if args.json:
        _emit_json(payload)
    else:
        _print_summary(summary)
    return 0 if summary.passed else 1


def cmd_gen(args: argparse.Namespace) -> int:
    spec = InstanceSpec(
        generator=GeneratorKind.RANDOM,
        seed=args.seed,
        min_vertices=args.vertices,
        max_vertices=args.vertices,
        min_edges=args.edges,
        max_edges=args.edges,
        allow_parallel=args.parallel_edges,
        bipartite_only=not args.any,
        count=1,
    )
    graft = random_graft(spec, 0)
    if args.terminals == "none":
        graft = graft.with_terminals(0)
    doc = from_graft(graft).to_document()
    if args.json:
        _emit_json(doc.model_dump(mode="json"))
    else:
        sys.stdout.write(dump(doc))
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    named = _load(args)
    gt = named.graft
    w = default_weighting(gt)
    source = to_dot(named, profile(gt, w, named.vertex(args.root)), w)
    if args.json:
        _emit_json({"format": args.format, "source": source})
    else:
        sys.stdout.write(source)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grafts",
        description=(
            "Minimum joins, distance decompositions and structural checks for grafts."
        ),
    )
    parser.add_argument("--log-level", default=None, help="Override GRAFTS_LOG_LEVEL.")
    parser.add_argument(
        "--log-format",
        choices=["json", "console"],
        default=None,
        help="Override GRAFTS_LOG_FORMAT.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def command(
        name: str,
        handler: Callable[[argparse.Namespace], int],
        help_text: str,
        needs_file: bool = True,
    ) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        if needs_file:
            sub.add_argument("file", help="Graft document (JSON).")
            sub.add_argument(
                "--allow-disconnected",
                action="store_true",
                help="Accept a disconnected graph with per-component parity.",
            )
        sub.add_argument(
            "--json", action="store_true", help="Emit a machine-readable object."
        )
        sub.set_defaults(handler=handler)
        return sub

    command(
        "solve", cmd_solve, "Minimum join size, one minimum join and the allowed edges."
    )

    dist = command("dist", cmd_dist, "Distance profile from a root.")
    dist.add_argument("--root", required=True)
    dist.add_argument(
        "--from", dest="source", default=None, help="Also print a shortest path."
    )

    decompose = command(
        "decompose", cmd_decompose, "Distance components and A/D/C from a root."
    )
    decompose.add_argument("--root", required=True)

    command("kl", cmd_kl, "Factor-components and Kotzig-Lovász classes.")

    critical = command(
        "critical", cmd_critical, "Class of a vertex and its critical set."
    )
    critical.add_argument("--class-of", dest="class_of", required=True)

    rootlize_cmd = command(
        "rootlize", cmd_rootlize, "Attach the rootlization gadget to a mount."
    )
    rootlize_cmd.add_argument(
        "--mount", required=True, help="Comma separated vertex names."
    )
    rootlize_cmd.add_argument(
        "--emit", default=None, help="Write the extended document here."
    )

    verify = subparsers.add_parser("verify", help="Run structural checks.")
    verify.add_argument("file", nargs="?", default=None, help="Graft document (JSON).")
    verify.add_argument("--allow-disconnected", action="store_true")
    verify.add_argument("--json", action="store_true", help="Emit the summary as JSON.")
    verify.add_argument("--enumerate", type=int, default=None, metavar="N")
    verify.add_argument("--random", type=int, default=None, metavar="COUNT")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument(
        "--vertices", type=int, default=10, help="Largest random vertex count."
    )
    verify.add_argument("--max-edges", type=int, default=None)
    verify.add_argument("--parallel", action="store_true", help="Allow parallel edges.")
    verify.add_argument(
        "--any", action="store_true", help="Include non-bipartite graphs."
    )
    verify.add_argument("--checks", default=None, help="Comma separated check ids.")
    verify.add_argument("--workers", type=int, default=None)
    verify.add_argument("--report", default=None, help="Write the JSON summary here.")
    verify.add_argument(
        "--metrics-file", default=None, help="Write Prometheus metrics here."
    )
    verify.add_argument(
        "--literal-sign", action="store_true", help="Use nu(T) - nu(T Δ {x,y})."
    )
    verify.add_argument("--timings", action="store_true", help="Include wall times.")
    verify.set_defaults(handler=cmd_verify)

    gen = command("gen", cmd_gen, "Random graft document.", needs_file=False)
    gen.add_argument("--random", action="store_true", required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--vertices", type=int, required=True)
    gen.add_argument("--edges", type=int, required=True)
    sides = gen.add_mutually_exclusive_group()
    sides.add_argument("--bipartite", dest="any", action="store_false")
    sides.add_argument("--any", dest="any", action="store_true")
    gen.add_argument("--parallel-edges", action="store_true")
    gen.add_argument("--terminals", choices=["auto", "none"], default="auto")

    export = command("export", cmd_export, "Graph drawing source seen from a root.")
    export.add_argument("--root", required=True)
    export.add_argument("--format", choices=["dot"], default="dot")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_structured_logging(
        "grafts",
        level=args.log_level or config.LOG_LEVEL,
        fmt=args.log_format or config.LOG_FORMAT,
    )
    try:
        return args.handler(args)
    except GraftError as e:
        logger.debug("command failed", command=args.command, error=type(e).__name__)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
