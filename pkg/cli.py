#!/usr/bin/env python3
"""
halfloop — command-line front end.

Usage:
    python cli.py check <loop>
    python cli.py nucleus <loop> [--write-quotient PATH]
    python cli.py classify <map-file>
    python cli.py search <loopA> <loopB> [--proper-only] [--first] [--homomorphisms]
    python cli.py verify-paper [--max-order k] [--named-max-order k]
    python cli.py catalog [list|dump <name>]
    python cli.py scott <map-file>
    python cli.py sweep [--max-order k] [loop ...]
    python cli.py enumerate <n> [--dump]
    python cli.py kernels <loopA> <loopB>

A loop argument is a catalog name or a path to a loop file (text or JSON).
JSON reports go to stdout, progress and summaries to stderr.
Exit codes: 0 success, 1 input or usage error, 2 trap fired.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path

from core.acceptance import run_acceptance_suite
from core.catalog import catalog_builtin, enumerated_entries, get_entry, resolve_loop, user_entries
from core.config import Settings, load_settings
from core.errors import HalfloopError, InputError, TrapError
from core.events import Event, EventBus
from core.halfmorph import ElementMap, classify_map, kernel_normality_experiment, load_map_file
from core.latin import count_loops, enumerate_loops
from core.loop import LoopTable, dump_loop_json, serialize_loop
from core.reports import (
    acceptance_response,
    catalog_entry_response,
    check_response,
    classification_response,
    dumps,
    kernel_response,
    nucleus_response,
    scott_response,
    search_response,
    sweep_response,
)
from core.scott import analyse_proper_map
from core.search import SearchOptions, enumerate_half_homomorphisms, enumerate_half_isomorphisms
from core.structure import is_normal, nucleus, squaring_report
from core.sweep import verify_main_sweep
from models.schemas import CosetFile

LOG_FORMAT = "%(asctime)s [%(name)s] %(levelname)s: %(message)s"

logger = logging.getLogger("halfloop.cli")


class _Parser(argparse.ArgumentParser):
    """Usage errors become InputError so they share exit code 1."""

    def error(self, message: str):
        raise InputError(f"usage: {message}")


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def _workers(args: argparse.Namespace, settings: Settings) -> int:
    return args.workers or settings.search.workers


def _map_loop(ref: str, base: Path) -> LoopTable:
    """Map files name their loops by catalog name or by a path relative to the file."""
    try:
        return resolve_loop(ref)
    except InputError:
        candidate = base / ref
        if candidate.exists():
            return resolve_loop(str(candidate))
        raise


def _load_map(path: str) -> ElementMap:
    payload = load_map_file(path)
    base = Path(path).resolve().parent
    return ElementMap(_map_loop(payload.source, base), _map_loop(payload.target, base), tuple(payload.images))


def _event_logger() -> EventBus:
    bus = EventBus()

    async def log_event(event: Event) -> None:
        if event.name == "pair_searched":
            logger.debug("%s -> %s: %s", event.payload["source"], event.payload["target"], event.payload["counts"])
        elif event.name == "theorem_violation":
            logger.error("Theorem violation: %s", event.payload)
        else:
            logger.info("%s %s", event.name, event.payload)

    bus.subscribe("*", log_event)
    return bus


# ── Commands ──────────────────────────────────────────────────────


def cmd_check(args, settings) -> int:
    Q = resolve_loop(args.loop)
    response = check_response(Q)
    _emit(dumps(response))
    holding = [k for k, r in response.reports.items() if r.holds]
    logger.info("%r: %s", Q, ", ".join(holding) or "no identities hold")
    return 0


def cmd_nucleus(args, settings) -> int:
    Q = resolve_loop(args.loop)
    response = nucleus_response(Q)
    if args.write_quotient:
        N = nucleus(Q)
        if not is_normal(Q, N):
            raise InputError(f"nucleus of {Q!r} is not normal; no quotient to write")
        q, _ = squaring_report(Q, N)
        out = Path(args.write_quotient)
        out.write_text(serialize_loop(q.table), encoding="utf-8")
        sidecar = out.with_name(out.name + ".cosets.json")
        cosets = CosetFile(cosets=[list(c) for c in q.cosets])
        sidecar.write_text(json.dumps(cosets.model_dump(), sort_keys=True) + "\n", encoding="utf-8")
        logger.info("Wrote quotient to %s and cosets to %s", out, sidecar)
    _emit(dumps(response))
    logger.info("N(%r) = %s, normal=%s", Q, response.nucleus, response.normal)
    return 0


def cmd_classify(args, settings) -> int:
    phi = _load_map(args.map_file)
    c = classify_map(phi)
    _emit(dumps(classification_response(phi, c)))
    logger.info("Verdict: %s", c.verdict.value)
    return 0


def cmd_search(args, settings) -> int:
    A, B = resolve_loop(args.source), resolve_loop(args.target)
    common = dict(first=args.first, workers=_workers(args, settings), order_filter=settings.search.order_filter)
    options = SearchOptions.proper_only(**common) if args.proper_only else SearchOptions(**common)
    if args.homomorphisms:
        results = enumerate_half_homomorphisms(A, B, options)
        mode = "half-homomorphisms"
    else:
        results = enumerate_half_isomorphisms(A, B, options)
        mode = "half-isomorphisms"
    if args.first:
        mode += " (first)"
    response = search_response(A, B, results, mode, args.limit)
    _emit(dumps(response))
    logger.info("%d map(s) from %r to %r", response.count, A, B)
    return 0


def cmd_verify_paper(args, settings) -> int:
    report = asyncio.run(
        run_acceptance_suite(
            settings,
            max_order=args.max_order,
            named_max_order=args.named_max_order,
            workers=_workers(args, settings),
            bus=_event_logger(),
        )
    )
    _emit(dumps(acceptance_response(report)))
    if not report.passed:
        failed = [s.name for s in report.sections if not s.passed]
        logger.error("Acceptance sections failed: %s", ", ".join(failed))
        return 2
    logger.info("All %d acceptance sections passed", len(report.sections))
    return 0


def cmd_catalog(args, settings) -> int:
    if args.action == "list":
        entries = [catalog_entry_response(e).model_dump() for e in catalog_builtin()]
        _emit(json.dumps(entries, sort_keys=True, indent=2))
        return 0
    if not args.name:
        raise InputError("catalog dump needs an entry name")
    loop = get_entry(args.name).loop
    _emit(dump_loop_json(loop) if args.json else serialize_loop(loop).rstrip("\n"))
    return 0


def cmd_scott(args, settings) -> int:
    phi = _load_map(args.map_file)
    analysis = analyse_proper_map(phi)
    _emit(dumps(scott_response(analysis)))
    t = analysis.triple
    logger.info("Scott triple (%d, %d, %d)%s", t.a, t.b, t.c, " after inversion" if t.inverted else "")
    return 0


def cmd_sweep(args, settings) -> int:
    if args.loops:
        entries = user_entries(args.loops)
    else:
        max_order = args.max_order or settings.sweep.max_order
        named_max = args.named_max_order or settings.sweep.named_max_order
        entries = [e for e in catalog_builtin() if e.order <= named_max] + list(enumerated_entries(max_order))
    report = asyncio.run(
        verify_main_sweep(
            entries,
            bus=_event_logger(),
            workers=_workers(args, settings),
            max_findings=settings.sweep.max_findings_per_pair,
            order_filter=settings.search.order_filter,
        )
    )
    _emit(dumps(sweep_response(report)))
    return 0


def cmd_enumerate(args, settings) -> int:
    if args.dump:
        loops = list(enumerate_loops(args.order))
        if args.json:
            _emit(json.dumps([json.loads(dump_loop_json(Q)) for Q in loops], sort_keys=True))
        else:
            _emit("\n".join(serialize_loop(Q) for Q in loops).rstrip("\n"))
        count = len(loops)
    else:
        count = count_loops(args.order)
        _emit(json.dumps({"order": args.order, "count": count}, sort_keys=True))
    logger.info("%d loop(s) of order %d", count, args.order)
    return 0


def cmd_kernels(args, settings) -> int:
    A, B = resolve_loop(args.source), resolve_loop(args.target)
    maps = (phi for phi, _ in enumerate_half_homomorphisms(A, B))
    experiment = kernel_normality_experiment(maps)
    _emit(dumps(kernel_response(A, B, experiment)))
    logger.info(
        "%d half-homomorphism(s): %d normal kernel(s), %d not normal",
        experiment.half_homomorphisms, experiment.normal_kernels, experiment.non_normal_kernels,
    )
    return 0


COMMANDS = {
    "check": cmd_check,
    "nucleus": cmd_nucleus,
    "classify": cmd_classify,
    "search": cmd_search,
    "verify-paper": cmd_verify_paper,
    "catalog": cmd_catalog,
    "scott": cmd_scott,
    "sweep": cmd_sweep,
    "enumerate": cmd_enumerate,
    "kernels": cmd_kernels,
}


# ── Parser ────────────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="halfloop", description="Moufang loops and half-isomorphisms")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes (default: config)")
    parser.add_argument("--quiet", action="store_true", help="Only log warnings and errors")
    parser.add_argument("--json", action="store_true", help="Dump tables as JSON instead of text")
    parser.add_argument("--config", type=str, default=None, help="Path to a settings YAML file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="Identity reports for a loop")
    p.add_argument("loop")

    p = sub.add_parser("nucleus", help="Nucleus, normality, quotient and squaring")
    p.add_argument("loop")
    p.add_argument("--write-quotient", metavar="PATH", default=None)

    p = sub.add_parser("classify", help="Classify the map in a map file")
    p.add_argument("map_file")

    p = sub.add_parser("search", help="Enumerate half-isomorphisms between two loops")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--proper-only", action="store_true")
    p.add_argument("--first", action="store_true", help="Stop at the first match")
    p.add_argument("--homomorphisms", action="store_true", help="Allow non-bijective maps")
    p.add_argument("--limit", type=int, default=None, help="Report at most this many maps")

    p = sub.add_parser("verify-paper", help="Run the full acceptance suite")
    p.add_argument("--max-order", type=int, default=None, help="Largest enumerated order (1-6)")
    p.add_argument("--named-max-order", type=int, default=None, help="Largest named catalog order")

    p = sub.add_parser("catalog", help="List or dump built-in loops")
    p.add_argument("action", nargs="?", choices=["list", "dump"], default="list")
    p.add_argument("name", nargs="?", default=None)

    p = sub.add_parser("scott", help="Scott triple and consequences for a proper map")
    p.add_argument("map_file")

    p = sub.add_parser("sweep", help="Half-isomorphism census over loops")
    p.add_argument("loops", nargs="*", help="Loop names or files (default: catalog)")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--named-max-order", type=int, default=None)

    p = sub.add_parser("enumerate", help="Count or dump all loops of order n")
    p.add_argument("order", type=int)
    p.add_argument("--dump", action="store_true")

    p = sub.add_parser("kernels", help="Kernel normality over all half-homomorphisms")
    p.add_argument("source")
    p.add_argument("target")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except InputError as e:
        print(e.message, file=sys.stderr)
        return 1

    settings = load_settings(args.config)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else settings.logging.level.upper(),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args, settings)
    except TrapError as e:
        logger.error("%s: %s %s", type(e).__name__, e.message, e.details or "")
        return 2
    except HalfloopError as e:
        logger.error("%s: %s", type(e).__name__, e.message)
        return 1


if __name__ == "__main__":
    sys.exit(main())
