"""Command-line front end.

Subcommands: solve, oracle, crossval, reduce, bench, gen.  Exit codes for
solve/oracle: 0 feasible, 1 infeasible, 2 input error, 3 search refusal.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from pathlib import Path
from typing import Optional

from .core import DomainError, ProblemInstance
from .dispatch import (
    SolveReport,
    dispatch,
    minimal_feasible_budget,
    solve_instance,
    solver_for,
)
from .generators import POLYNOMIAL_VARIANTS, random_instance, with_budget
from .instance_io import (
    InstanceParseError,
    format_rational,
    parse_exact_cover,
    parse_instance,
    parse_min_bisection,
    serialize_instance,
)
from .oracle import OracleRefusal, SearchBudget, oracle_solve
from .reductions import (
    reduce_minbisection_to_borda_swap_cb,
    reduce_x3c_to_borda_unit_cb,
    reduce_x3c_to_plurality_shift_cb,
)

EXIT_FEASIBLE = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT_ERROR = 2
EXIT_REFUSAL = 3


def _print_report(report: SolveReport, emit_witness: bool, fmt: str,
                  instance: ProblemInstance, out=None) -> None:
    out = out if out is not None else sys.stdout
    if fmt == "json":
        payload = {
            "variant": report.variant,
            "solver": report.solver,
            "feasible": report.feasible,
            "cost": report.cost,
            "time_seconds": round(report.elapsed, 6),
            "scores_before": report.scores_before,
            "scores_after": report.scores_after,
            "seats_before": {p: format_rational(v) for p, v in report.seats_before.items()},
            "seats_after": (
                {p: format_rational(v) for p, v in report.seats_after.items()}
                if report.seats_after is not None
                else None
            ),
        }
        if emit_witness and report.plan is not None:
            payload["witness"] = {
                instance.election.voters[i]: " ".join(order.ranking)
                for i, order in sorted(report.plan.replacements.items())
            }
        print(json.dumps(payload, indent=2), file=out)
        return
    print(f"variant: {report.variant}", file=out)
    print(f"solver: {report.solver}", file=out)
    print(f"feasible: {'yes' if report.feasible else 'no'}", file=out)
    if report.cost is not None:
        print(f"cost: {report.cost}", file=out)
    print(f"time: {report.elapsed:.4f}s", file=out)

    def score_line(label, scores):
        body = " ".join(f"{p}={v}" for p, v in scores.items())
        print(f"{label}: {body}", file=out)

    def seat_line(label, seats):
        body = " ".join(f"{p}={format_rational(v)}" for p, v in seats.items())
        print(f"{label}: {body}", file=out)

    score_line("scores-before", report.scores_before)
    seat_line("seats-before", report.seats_before)
    if report.scores_after is not None:
        score_line("scores-after", report.scores_after)
        seat_line("seats-after", report.seats_after)
    if emit_witness and report.plan is not None:
        for i, order in sorted(report.plan.replacements.items()):
            voter = instance.election.voters[i]
            print(f"witness: {voter} -> {' '.join(order.ranking)}", file=out)


def _load_instance(path: str) -> ProblemInstance:
    return parse_instance(Path(path).read_text())


def _cmd_solve(args, force_oracle: bool) -> int:
    try:
        instance = _load_instance(args.instance)
    except (OSError, InstanceParseError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    budget = SearchBudget(max_expansions=args.max_expansions)
    try:
        report = solve_instance(instance, budget, force_oracle=force_oracle)
    except OracleRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    _print_report(report, args.emit_witness, args.format, instance)
    return EXIT_FEASIBLE if report.feasible else EXIT_INFEASIBLE


def _cmd_crossval(args) -> int:
    budget = SearchBudget(max_expansions=args.max_expansions)
    failures = 0
    print("variant agree total")
    for variant in POLYNOMIAL_VARIANTS:
        agree = 0
        for index in range(args.count):
            instance = random_instance(
                variant, args.seed, index,
                max_voters=args.max_voters, max_parties=args.max_parties,
                max_price=args.max_price,
            )
            solver = solver_for(dispatch(instance), budget)
            optimum, _plan = oracle_solve(instance, budget)
            ok = _budgets_agree(instance, solver, optimum)
            if ok:
                agree += 1
            else:
                failures += 1
                dump = Path(args.artifact_dir) / (
                    f"disagreement-{variant.label().replace('/', '-')}-{index}.txt"
                )
                dump.parent.mkdir(parents=True, exist_ok=True)
                dump.write_text(serialize_instance(instance))
                print(
                    f"disagreement on {variant.label()} index {index}; "
                    f"instance written to {dump}",
                    file=sys.stderr,
                )
        print(f"{variant.label()} {agree} {args.count}")
    return EXIT_INFEASIBLE if failures else EXIT_FEASIBLE


def _budgets_agree(instance, solver, optimum: Optional[int]) -> bool:
    solved = minimal_feasible_budget(instance, solver)
    return solved == optimum


def _cmd_oracle(args) -> int:
    return _cmd_solve(args, force_oracle=True)


def _cmd_reduce(args) -> int:
    try:
        text = Path(args.source).read_text()
        if args.kind == "x3c-plurality-shift":
            instance = reduce_x3c_to_plurality_shift_cb(parse_exact_cover(text))
        elif args.kind == "x3c-borda-unit":
            instance = reduce_x3c_to_borda_unit_cb(parse_exact_cover(text))
        elif args.kind == "bisection-borda-swap":
            instance = reduce_minbisection_to_borda_swap_cb(parse_min_bisection(text))
        else:
            print(f"error: unknown reduction {args.kind!r}", file=sys.stderr)
            return EXIT_INPUT_ERROR
    except (OSError, InstanceParseError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    out_text = serialize_instance(instance)
    if args.output:
        Path(args.output).write_text(out_text)
    else:
        sys.stdout.write(out_text)
    return EXIT_FEASIBLE


def _cmd_bench(args) -> int:
    budget = SearchBudget(max_expansions=args.max_expansions)
    print("file\tvariant\tsolver\treps\tmedian_seconds\tcells\tsignatures")
    for path in args.instances:
        try:
            instance = _load_instance(path)
        except (OSError, InstanceParseError, DomainError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return EXIT_INPUT_ERROR
        name = dispatch(instance)
        times = []
        stats: dict = {}
        for _ in range(args.reps):
            stats = {}
            solver = _stats_solver(name, budget, stats)
            start = time.monotonic()
            solver(instance)
            times.append(time.monotonic() - start)
        cells = stats.get("table_cells", stats.get("networks_solved", ""))
        signatures = stats.get("signatures", "")
        median = statistics.median(times)
        print(
            f"{path}\t{instance.variant_label()}\t{name}\t{args.reps}"
            f"\t{median:.6f}\t{cells}\t{signatures}"
        )
    return EXIT_FEASIBLE


def _stats_solver(name: str, budget: SearchBudget, stats: dict):
    from .borda import solve_borda_zero
    from .oracle import solve_np_hard
    from .plurality_dp import solve_plurality_t_dollar
    from .plurality_flow import solve_plurality_zero

    if name == "plurality-threshold-dp":
        return lambda inst: solve_plurality_t_dollar(inst, stats=stats)
    if name == "plurality-flow-solver":
        return lambda inst: solve_plurality_zero(inst, stats=stats)
    if name == "borda-solvers":
        return lambda inst: solve_borda_zero(inst, stats=stats)
    return lambda inst: solve_np_hard(inst, budget)


def _cmd_gen(args) -> int:
    from .generators import Variant
    from .core import ScoringRule

    rule = ScoringRule(args.rule)
    variant = Variant(
        rule=rule,
        thresholded=args.thresholded,
        bribery=args.bribery,
        with_preferred=args.preferred,
    )
    instance = random_instance(
        variant, args.seed, args.index,
        max_voters=args.max_voters, max_parties=args.max_parties,
        max_price=args.max_price,
    )
    if args.budget is not None:
        instance = with_budget(instance, args.budget)
    text = serialize_instance(instance)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_FEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coalition-bribery",
        description="Exact solvers for coalition bribery in parliamentary elections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--max-expansions", type=int, default=10_000_000,
                       help="expansion limit for the exact search")

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("instance")
    p_solve.add_argument("--emit-witness", action="store_true")
    p_solve.add_argument("--format", choices=("text", "json"), default="text")
    add_common(p_solve)

    p_oracle = sub.add_parser("oracle", help="solve with the exact search only")
    p_oracle.add_argument("instance")
    p_oracle.add_argument("--emit-witness", action="store_true")
    p_oracle.add_argument("--format", choices=("text", "json"), default="text")
    add_common(p_oracle)

    p_cv = sub.add_parser("crossval", help="compare polynomial solvers with the exact search")
    p_cv.add_argument("--seed", type=int, default=1)
    p_cv.add_argument("--count", type=int, default=100)
    p_cv.add_argument("--max-voters", type=int, default=5)
    p_cv.add_argument("--max-parties", type=int, default=4)
    p_cv.add_argument("--max-price", type=int, default=3)
    p_cv.add_argument("--artifact-dir", default="crossval-artifacts")
    add_common(p_cv)

    p_red = sub.add_parser("reduce", help="emit a hardness-construction instance")
    p_red.add_argument("kind", choices=(
        "x3c-plurality-shift", "x3c-borda-unit", "bisection-borda-swap"))
    p_red.add_argument("source")
    p_red.add_argument("--output")

    p_bench = sub.add_parser("bench", help="time solvers on instance files")
    p_bench.add_argument("instances", nargs="*")
    p_bench.add_argument("--reps", type=int, default=5)
    add_common(p_bench)

    p_gen = sub.add_parser("gen", help="emit a seeded random instance")
    p_gen.add_argument("--rule", choices=("plurality", "borda"), default="plurality")
    p_gen.add_argument("--bribery", choices=("unit", "dollar", "swap", "shift"),
                       default="unit")
    p_gen.add_argument("--thresholded", action="store_true")
    p_gen.add_argument("--preferred", action="store_true")
    p_gen.add_argument("--seed", type=int, default=1)
    p_gen.add_argument("--index", type=int, default=0)
    p_gen.add_argument("--max-voters", type=int, default=5)
    p_gen.add_argument("--max-parties", type=int, default=4)
    p_gen.add_argument("--max-price", type=int, default=3)
    p_gen.add_argument("--budget", type=int)
    p_gen.add_argument("--output")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "solve":
        return _cmd_solve(args, force_oracle=False)
    if args.command == "oracle":
        return _cmd_oracle(args)
    if args.command == "crossval":
        return _cmd_crossval(args)
    if args.command == "reduce":
        return _cmd_reduce(args)
    if args.command == "bench":
        return _cmd_bench(args)
    if args.command == "gen":
        return _cmd_gen(args)
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
