"""Command-line entry point: python -m src.main <subcommand> ..."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from src.codes.distance import MODES, min_distance
from src.codes.fixed import fixed_code_structure, fixed_subcode
from src.codes.linear_code import is_automorphism, is_self_dual
from src.codes.refinement import automorphism_group
from src.config import config
from src.data.code_db import parse_db
from src.errors import FixglueError
from src.groups.permutation import Permutation, is_fpf_involution
from src.logging_setup import setup_logging
from src.monitoring.run_tracker import RunTracker
from src.pipeline.candidates import filter_candidates
from src.pipeline.frame import PAIRS, standard_frame
from src.pipeline.orbit_reps import orbit_reps
from src.pipeline.runner import REFERENCE_N, PipelineRunner, published_mismatches, run_selftest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose errors surface as one-line diagnostics with exit status 1"""

    def error(self, message):
        raise UsageError(message)


def _cmd_mindist(args) -> int:
    for i, code in enumerate(parse_db(args.db), start=1):
        d = min_distance(code, args.mode, early_abort_at=args.early_abort)
        label = code.name or f"#{i}"
        print(f"{label}\t[{code.n},{code.k},{d}]")
    return EXIT_OK


def _cmd_aut(args) -> int:
    for i, code in enumerate(parse_db(args.db), start=1):
        group = automorphism_group(code)
        label = code.name or f"#{i}"
        print(f"{label}\t[{code.n},{code.k}]\t|Aut| = {group.order()}")
        for g in group.generators:
            print(f"  {g}")
    return EXIT_OK


def _cmd_fixed(args) -> int:
    for i, code in enumerate(parse_db(args.db), start=1):
        sigma = Permutation.parse(args.perm, code.n)
        label = code.name or f"#{i}"
        fixed = fixed_subcode(code, sigma)
        line = f"{label}\t[{code.n},{code.k}]\tdim C(sigma) = {fixed.k}"
        if is_self_dual(code) and is_fpf_involution(sigma) and is_automorphism(code, sigma):
            structure = fixed_code_structure(code, sigma)
            line += f"\tprojection self-dual: {structure.projection_self_dual}"
        print(line)
        for row in fixed.gen.to_strings():
            print(f"  {row}")
    return EXIT_OK


def _cmd_frame(args) -> int:
    frame = standard_frame(args.n)
    for role in ("alpha", "beta", "gamma", "chi", "mu"):
        print(f"{role} = {getattr(frame, role)}")
    return EXIT_OK


def _cmd_orbit_reps(args) -> int:
    frame = standard_frame(args.n)
    half_d = args.half_target_d if args.half_target_d is not None else config.pipeline.half_target_d
    library = filter_candidates(parse_db(args.db), frame, half_d)
    reps = orbit_reps(library, frame)
    for index, s, ts in reps.class_counts:
        print(f"code {index + 1}: s = {s}, t = {ts}")
    print(f"library: {len(library)}  representatives: {len(reps)}")
    return EXIT_OK


def _write_report(runner: PipelineRunner, result, path: Optional[str]) -> None:
    report = runner.build_report(result)
    if path:
        Path(path).write_text(report.to_json())
        logger.info(f"Report written to {path}")
    runner.tracker.save_metrics()


def _print_counts(result) -> None:
    print(f"database: {result.database_size}")
    print(f"library: {len(result.library)}")
    print(f"representatives: {len(result.reps)}")
    print(f"buckets: {result.partition.m}")
    print(f"survivors: {len(result.survivors)} {sorted({s.summary for s in result.survivors})}")
    print(f"cases table: {result.table.sorted_rows()}")
    print(f"verdict: {result.outcome.verdict.value}")


def _cmd_glue_search(args) -> int:
    db = parse_db(args.db)
    half_d = args.half_target_d if args.half_target_d is not None else config.pipeline.half_target_d
    runner = PipelineRunner(args.n, args.target_d, half_d, threads=args.threads, tracker=RunTracker(args.metrics))
    result = runner.run(db, pair=args.pair)
    _print_counts(result)
    _write_report(runner, result, args.report)
    return EXIT_OK


def _cmd_verify_published(args) -> int:
    db = parse_db(args.db)
    others = [p for p in PAIRS if p != "alpha,beta"]
    runner = PipelineRunner(REFERENCE_N, 16, 8, threads=args.threads, tracker=RunTracker(args.metrics))
    result = runner.run(db, other_pairs=others)
    _print_counts(result)
    _write_report(runner, result, args.report)
    runner.tracker.print_run_report()
    problems = published_mismatches(result)
    for problem in problems:
        logger.error(f"Mismatch: {problem}")
    return EXIT_MISMATCH if problems else EXIT_OK


def _cmd_selftest(args) -> int:
    ok, messages, result = run_selftest(threads=args.threads)
    for message in messages:
        print(message)
    print(f"selftest {'passed' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fixglue", description="Fixed-subcode gluing engine for binary self-dual codes")
    parser.add_argument("--log-level", default=None, help="Override the configured log level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mindist", help="Minimum distance of every code in a database")
    p.add_argument("db")
    p.add_argument("--mode", choices=MODES, default="auto")
    p.add_argument("--early-abort", type=int, default=None, metavar="W")
    p.set_defaults(handler=_cmd_mindist)

    p = sub.add_parser("aut", help="Automorphism group order and generators")
    p.add_argument("db")
    p.set_defaults(handler=_cmd_aut)

    p = sub.add_parser("fixed", help="Subcode fixed by a permutation")
    p.add_argument("db")
    p.add_argument("--perm", required=True, help="Cycle notation, e.g. '(1,2)(3,4)'")
    p.set_defaults(handler=_cmd_fixed)

    p = sub.add_parser("frame", help="Print the standard involutions")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_frame)

    p = sub.add_parser("orbit-reps", help="Count orbit representatives of a half-length library")
    p.add_argument("--db", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--half-target-d", type=int, default=None)
    p.set_defaults(handler=_cmd_orbit_reps)

    for name, handler, help_text in (
        ("glue-search", _cmd_glue_search, "Run the pipeline for one pair"),
        ("verify-paper", _cmd_verify_published, "Length-72 run of all three pairs against the published counts"),
        ("selftest", _cmd_selftest, "Length-8 end-to-end check"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--threads", type=int, default=config.workers.threads)
        p.set_defaults(handler=handler)
        if name == "selftest":
            continue
        if name == "verify-paper" and config.settings.reference_db:
            p.add_argument("--db", default=config.settings.reference_db)
        else:
            p.add_argument("--db", required=True)
        p.add_argument("--report", default=None, help="Write the JSON report here")
        p.add_argument("--metrics", default=config.report.metrics_file, help="Write run metrics here")
        if name == "glue-search":
            p.add_argument("--n", type=int, default=config.pipeline.n)
            p.add_argument("--target-d", type=int, default=config.pipeline.target_d)
            p.add_argument("--half-target-d", type=int, default=None)
            p.add_argument("--pair", choices=PAIRS, default=config.pipeline.pair)
    return parser


def run_cli(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"fixglue: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(config.logging, level_override=args.log_level)
    try:
        return args.handler(args)
    except (FixglueError, OSError, ValueError, RuntimeError) as e:
        logger.error(str(e).replace("\n", " "))
        return EXIT_ERROR


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
