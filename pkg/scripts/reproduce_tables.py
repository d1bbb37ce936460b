#!/usr/bin/env python3
"""
Reproduce the convergence/diversity comparison for all ZDT problems.

Runs the plain and archive variants with the published settings, writes
each batch to results/<problem>_<variant>/ and prints the comparison
against the transcribed TGP, SPEA and PAES results, with measured and
published seconds per run side by side.
"""

import argparse
import logging
import sys
from pathlib import Path

from tgp_moo.compare import BaselineComparator
from tgp_moo.engine import AlgoConfig
from tgp_moo.experiment import ExperimentSpec, run_batch, summarize, timings
from tgp_moo.export import ResultExporter
from tgp_moo.problems import PROBLEMS
from tgp_moo.utils import setup_logging

ROOT = Path(__file__).resolve().parent.parent

logger = logging.getLogger('reproduce_tables')


def reproduce(config: AlgoConfig, out_dir: Path, workers: int = 1):
    """Run every problem/variant pair and return the summary paths."""
    summaries = []
    for problem in PROBLEMS:
        for variant in ('plain', 'archive'):
            spec = ExperimentSpec(problem=problem, variant=variant, config=config,
                                  out_dir=out_dir / f"{problem}_{variant}", workers=workers)
            results = run_batch(spec)
            summary = summarize(spec, results)
            timing = timings(results)
            ResultExporter(spec.out_dir).export_batch(results, summary, timing)
            logger.info("%s %s: CM=%.4g DM=%.4g, %.2f s/run", problem, variant,
                        summary['aggregate']['mean_cm'], summary['aggregate']['mean_dm'],
                        timing['mean_seconds'])
            summaries.append(spec.out_dir / 'summary.json')
    return summaries


def main():
    parser = argparse.ArgumentParser(description='Reproduce the ZDT comparison tables')
    parser.add_argument('--config', type=Path, default=ROOT / 'config' / 'table1.yaml')
    parser.add_argument('--baseline', type=Path, default=ROOT / 'data' / 'baselines.json')
    parser.add_argument('--out', type=Path, default=ROOT / 'results')
    parser.add_argument('--runs', type=int, help='override the number of runs')
    parser.add_argument('--workers', type=int, default=1)
    args = parser.parse_args()

    setup_logging()
    config = AlgoConfig.from_yaml(args.config).replace(runs=args.runs)
    summaries = reproduce(config, args.out, args.workers)

    comparator = BaselineComparator(args.baseline)
    table = comparator.build_table(summaries)
    print(comparator.generate_comparison_report(table, args.out / 'comparison.csv'), end='')
    return 0


if __name__ == "__main__":
    sys.exit(main())
