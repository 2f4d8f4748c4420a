"""Command-line front end.

Subcommands: solve, generate, decode, oracle, validate, report.
Exit status: 0 ok, 1 validation failure or infeasible result, 2 usage error.
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from app.config import Settings, get_settings, load_run_config
from app.logging_setup import setup_logging
from app.models.chromosome import parse_chromosome, serialize_chromosome
from app.models.instance import Instance, parse_instance, serialize_instance
from app.models.packing import format_fitness, format_solution, parse_solution
from app.models.tools import CutGenSpec
from app.services.engine import GeneticEngine
from app.services.generator import generate_cut_instance
from app.services.oracle import run_oracle
from app.services.packer import container_utilization, decode
from app.services.results_log import append_result, summarize_results
from app.services.validator import validate_solution

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# CLI flag dest -> GaConfig field
CONFIG_FLAGS = {
    "pop": "population_size",
    "elite": "elite_count",
    "probc": "prob_c",
    "pm": "mutation_prob",
    "kb": "kb",
    "ke": "ke",
    "gens": "generations",
    "workers": "workers",
    "seed": "seed",
    "w": "tournament_win_prob",
    "early_stop": "early_stop",
}


def _read_instance(path: str) -> Instance:
    text = Path(path).read_text(encoding="utf-8")
    return parse_instance(text, name=Path(path).stem)


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8", newline="\n")


def _parse_dims(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected L,W,H, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers in {text!r}") from None


def _parse_resume(text: str):
    return text if text == "latest" else int(text)


def build_config(args: argparse.Namespace, settings: Settings):
    """Merge run config sources: CLI flag > YAML file > environment > defaults."""
    overrides: Dict[str, Any] = {}
    if args.config:
        overrides.update(load_run_config(args.config))
    for flag, field in CONFIG_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = value
    return settings.default_ga_config(**overrides)


# =============================================================================
# Subcommands
# =============================================================================

def cmd_solve(args: argparse.Namespace, settings: Settings) -> int:
    instance = _read_instance(args.instance)
    config = build_config(args, settings)

    write_checkpoints = settings.checkpoint_every_generation and not args.no_checkpoints
    checkpoint_dir = Path(args.checkpoint_dir or Path(settings.checkpoint_dir) / instance.name)
    if not write_checkpoints and args.resume is None:
        checkpoint_dir = None

    started = time.perf_counter()
    result = GeneticEngine(
        instance, config, checkpoint_dir=checkpoint_dir, write_checkpoints=write_checkpoints
    ).run(resume_from=args.resume)
    wall_clock = time.perf_counter() - started

    out = args.out or str(Path(args.instance).with_suffix(".sol"))
    _write_text(out, format_solution(result.solution))
    append_result(args.results_log or settings.results_log, instance.name, config, result.best.fitness, wall_clock)

    print(f"best fitness {format_fitness(result.best.fitness)}")
    print(f"chromosome {result.best.key}")
    print(f"generations {result.generations_run}{' (stopped early)' if result.stopped_early else ''}")
    print(f"solution written to {out}")
    return EXIT_OK if result.solution.feasible else EXIT_FAILED


def cmd_generate(args: argparse.Namespace, settings: Settings) -> int:
    spec = CutGenSpec(dims=args.dims, box_count=args.k, min_extent=args.min_extent, seed=args.seed)
    name = Path(args.out).stem if args.out else "cut"
    instance = generate_cut_instance(spec, name=name)
    _write_text(args.out, serialize_instance(instance))
    if args.out:
        print(f"wrote {instance.box_count} boxes to {args.out}")
    return EXIT_OK


def cmd_decode(args: argparse.Namespace, settings: Settings) -> int:
    instance = _read_instance(args.instance)
    chromosome = parse_chromosome(args.chromosome)
    solution = decode(chromosome, instance, args.kb or settings.kb, args.ke or settings.ke)
    _write_text(args.out, format_solution(solution))
    if args.out:
        print(f"fitness {format_fitness(solution.fitness)}")
    return EXIT_OK if solution.feasible else EXIT_FAILED


def cmd_oracle(args: argparse.Namespace, settings: Settings) -> int:
    instance = _read_instance(args.instance)
    result = run_oracle(
        instance,
        args.kb or settings.kb,
        args.ke or settings.ke,
        args.limit or settings.oracle_limit,
    )
    print(f"best fitness {format_fitness(result.best_fitness)}")
    print(f"chromosome {serialize_chromosome(result.best_chromosome)}")
    print(f"evaluated {result.evaluated_count}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, settings: Settings) -> int:
    instance = _read_instance(args.instance)
    solution = parse_solution(Path(args.solution).read_text(encoding="utf-8"))
    report = validate_solution(instance, solution)
    for violation in report.violations:
        print(f"{violation.kind.value}: {violation.message}")
    if report.ok:
        print(f"ok: {report.placement_count} placements, fitness {format_fitness(report.fitness)}")
        return EXIT_OK
    print(f"{len(report.violations)} violation(s)")
    return EXIT_FAILED


def cmd_report(args: argparse.Namespace, settings: Settings) -> int:
    if args.results_log:
        summary = summarize_results(args.results_log)
        print(summary.to_string())
        return EXIT_OK

    if not (args.instance and args.solution):
        raise ValueError("report needs --results-log, or both --instance and --solution")
    instance = _read_instance(args.instance)
    solution = parse_solution(Path(args.solution).read_text(encoding="utf-8"))
    print(f"fitness {format_fitness(solution.fitness)} ({'feasible' if solution.feasible else 'infeasible'})")
    print(f"{'container':>9}  {'boxes':>5}  {'used':>12}  {'capacity':>12}  {'fill':>7}")
    counts = {cid: len(ps) for cid, ps in solution.placements_by_container().items()}
    for cid, used, capacity in container_utilization(solution, instance):
        print(f"{cid:>9}  {counts.get(cid, 0):>5}  {used:>12}  {capacity:>12}  {used / capacity:>7.2%}")
    return EXIT_OK


# =============================================================================
# Parser
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binpack",
        description="3D multiple-container bin packing with a genetic algorithm",
    )
    parser.add_argument("--log-level", default=None, help="Console log level (default from BINPACK_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Run the genetic algorithm on an instance")
    solve.add_argument("--instance", required=True, help="Instance file")
    solve.add_argument("--pop", type=int, help="Population size Z")
    solve.add_argument("--elite", type=int, help="Elite count E")
    solve.add_argument("--probc", type=float, help="Pair pass-through probability")
    solve.add_argument("--pm", type=float, help="Mutation probability")
    solve.add_argument("--kb", type=int, help="Boxes considered per placement step")
    solve.add_argument("--ke", type=int, help="Spaces scanned per opened container")
    solve.add_argument("--gens", type=int, help="Generations G")
    solve.add_argument("--workers", type=int, help="Evaluator processes")
    solve.add_argument("--seed", type=int, help="Root seed")
    solve.add_argument("--w", type=float, help="Tournament win probability")
    solve.add_argument("--early-stop", type=int, dest="early_stop", help="Stop after N stagnant generations")
    solve.add_argument("--config", help="YAML file of run config overrides")
    solve.add_argument("--out", help="Solution file (default: <instance>.sol)")
    solve.add_argument("--checkpoint-dir", help="Checkpoint directory")
    solve.add_argument("--no-checkpoints", action="store_true", help="Do not write checkpoints")
    solve.add_argument(
        "--resume", nargs="?", const="latest", type=_parse_resume,
        help="Resume from a checkpoint generation (default: latest)",
    )
    solve.add_argument("--results-log", help="Append the run summary to this log")
    solve.set_defaults(handler=cmd_solve)

    generate = sub.add_parser("generate", help="Generate a guillotine-cut instance")
    generate.add_argument("--k", type=int, required=True, help="Number of boxes")
    generate.add_argument("--dims", type=_parse_dims, required=True, help="Container L,W,H")
    generate.add_argument("--min-extent", type=int, default=1, help="Smallest piece extent")
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--out", help="Instance file (default: stdout)")
    generate.set_defaults(handler=cmd_generate)

    dec = sub.add_parser("decode", help="Decode one chromosome")
    dec.add_argument("--instance", required=True)
    dec.add_argument("--chromosome", required=True, help='e.g. "2,1,3|1,2"')
    dec.add_argument("--kb", type=int)
    dec.add_argument("--ke", type=int)
    dec.add_argument("--out", help="Solution file (default: stdout)")
    dec.set_defaults(handler=cmd_decode)

    oracle = sub.add_parser("oracle", help="Exhaustive decoder search for tiny instances")
    oracle.add_argument("--instance", required=True)
    oracle.add_argument("--kb", type=int)
    oracle.add_argument("--ke", type=int)
    oracle.add_argument("--limit", type=int, help="Largest M!*N! to enumerate")
    oracle.set_defaults(handler=cmd_oracle)

    validate = sub.add_parser("validate", help="Independently check a solution file")
    validate.add_argument("--instance", required=True)
    validate.add_argument("--solution", required=True)
    validate.set_defaults(handler=cmd_validate)

    report = sub.add_parser("report", help="Container utilization or results-log summary")
    report.add_argument("--instance")
    report.add_argument("--solution")
    report.add_argument("--results-log")
    report.set_defaults(handler=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI.

    Returns:
        Process exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        settings = Settings(log_level=args.log_level) if args.log_level else get_settings()
        setup_logging(settings)
        return args.handler(args, settings)
    except (ValueError, OSError) as e:
        logger.error("%s: %s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
