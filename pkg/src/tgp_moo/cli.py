"""
Command-line interface: run experiment batches, export reference fronts,
compare summaries with baseline results.

    tgp-moo run --problem zdt1 --variant archive --runs 30 --seed 42 --out results/zdt1
    tgp-moo front --problem zdt3 --out fronts
    tgp-moo compare results/*/summary.json --baseline data/baselines.json
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import yaml

from .compare import BaselineComparator
from .engine import VARIANTS, AlgoConfig
from .experiment import ExperimentSpec, load_fitness_cases, run_batch, summarize, timings
from .export import ResultExporter
from .problems import DEFAULT_REFERENCE_POINTS, PROBLEMS, get_problem
from .utils import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _symbol_list(text: str) -> List[str]:
    return [s.strip() for s in text.split(',') if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='tgp-moo',
        description='Traceless Genetic Programming for multiobjective optimization')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    parser.add_argument('-q', '--quiet', action='store_true', help='warnings only')
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help='execute a batch of seeded runs')
    run.add_argument('--problem', type=str.lower, choices=sorted(PROBLEMS),
                     help='ZDT problem (plain/archive), any case')
    run.add_argument('--variant', choices=VARIANTS, default='archive')
    run.add_argument('--config', type=Path, help='YAML file with algorithm parameters')
    run.add_argument('--runs', type=int)
    run.add_argument('--pop-size', type=int)
    run.add_argument('--generations', type=int)
    run.add_argument('--p-insert', type=float)
    run.add_argument('--archive-capacity', type=int,
                     help='archive size (default: population size)')
    run.add_argument('--metric-stride', type=int)
    run.add_argument('--function-set', type=_symbol_list,
                     help='comma-separated symbols, e.g. "+,-,*,sin,exp"')
    run.add_argument('--seed', type=int)
    run.add_argument('--cases', type=Path, help='fitness-case CSV for the classic variant')
    run.add_argument('--workers', type=int, default=1, help='parallel processes')
    run.add_argument('--out', type=Path, default=Path('results'))
    run.add_argument('--format', choices=('csv', 'tsv'), default='csv', dest='fmt')

    front = sub.add_parser('front', help='write the reference Pareto front')
    front.add_argument('--problem', type=str.lower, choices=sorted(PROBLEMS), required=True)
    front.add_argument('--points', type=int, default=DEFAULT_REFERENCE_POINTS)
    front.add_argument('--out', type=Path, default=Path('.'))
    front.add_argument('--format', choices=('csv', 'tsv'), default='csv', dest='fmt')

    compare = sub.add_parser('compare', help='tabulate summaries against baselines')
    compare.add_argument('summaries', nargs='+', type=Path)
    compare.add_argument('--baseline', type=Path, help='baseline JSON (optional)')
    compare.add_argument('--out', type=Path, help='also write the table as CSV')

    return parser


def cmd_run(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.variant != 'classic' and args.problem is None:
        parser.error('--problem is required for the plain and archive variants')
    if args.variant == 'classic' and args.cases is None:
        parser.error('--cases is required for the classic variant')

    try:
        config = AlgoConfig.from_yaml(args.config) if args.config else AlgoConfig()
        cases = load_fitness_cases(args.cases) if args.cases else None
    except (OSError, ValueError, TypeError, yaml.YAMLError) as e:
        logger.error("Cannot read input: %s", e)
        return EXIT_FAILURE

    try:
        config = config.replace(
            runs=args.runs,
            pop_size=args.pop_size,
            generations=args.generations,
            p_insert=args.p_insert,
            archive_capacity=args.archive_capacity,
            metric_stride=args.metric_stride,
            function_set=tuple(args.function_set) if args.function_set else None,
            seed=args.seed,
        )
        spec = ExperimentSpec(problem=args.problem, variant=args.variant, config=config,
                              out_dir=args.out, fmt=args.fmt, workers=args.workers,
                              fitness_cases=cases).validate()
    except (ValueError, KeyError, TypeError) as e:
        logger.error("Invalid experiment: %s", e)
        return EXIT_USAGE

    try:
        exporter = ResultExporter(spec.out_dir, spec.fmt)
    except OSError as e:
        logger.error("Cannot write to %s: %s", spec.out_dir, e)
        return EXIT_FAILURE

    results = run_batch(spec)
    summary = summarize(spec, results)

    try:
        exporter.export_batch(results, summary, timings(results))
    except OSError as e:
        logger.error("Cannot write results to %s: %s", spec.out_dir, e)
        return EXIT_FAILURE

    aggregate = summary['aggregate']
    if spec.variant == 'classic':
        print(f"classic: mean Q = {aggregate['mean_q']:.6g}, "
              f"solved {aggregate['solved_runs']}/{len(results)}")
    else:
        print(f"{spec.problem} {spec.variant}: mean CM = {aggregate['mean_cm']:.6g}, "
              f"mean DM = {aggregate['mean_dm']:.6g} over {len(results)} run(s)")
    return EXIT_OK


def cmd_front(args: argparse.Namespace) -> int:
    problem = get_problem(args.problem)
    try:
        points = problem.true_front(args.points)
    except ValueError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    try:
        path = ResultExporter(args.out, args.fmt).to_reference_front(problem.name, points)
    except OSError as e:
        logger.error("Cannot write front to %s: %s", args.out, e)
        return EXIT_FAILURE
    print(path)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    try:
        comparator = BaselineComparator(args.baseline)
        table = comparator.build_table(args.summaries)
        report = comparator.generate_comparison_report(table, args.out)
    except (ValueError, OSError) as e:
        logger.error("%s", e)
        return EXIT_FAILURE
    print(report, end='')
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(verbose=args.verbose, quiet=args.quiet)

    if args.command == 'run':
        return cmd_run(args, parser)
    if args.command == 'front':
        return cmd_front(args)
    return cmd_compare(args)


if __name__ == '__main__':
    sys.exit(main())
