"""
Seeded experiment batches and their aggregate statistics.

Run ``i`` of a batch uses seed ``base_seed + i``. Runs may execute on a
process pool; results are always merged in run-index order.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from .core import RandomSource
from .engine import VARIANTS, AlgoConfig, ClassicResult, MO_RUNNERS, RunRecord, run_classic
from .problems import PROBLEMS, get_problem

logger = logging.getLogger(__name__)

# A classic run counts as solved below this Q.
SOLVED_Q = 0.01


@dataclass
class ExperimentSpec:
    """What to run and where to put the results."""
    problem: Optional[str] = None
    variant: str = 'archive'
    config: AlgoConfig = field(default_factory=AlgoConfig)
    out_dir: Path = Path('results')
    fmt: str = 'csv'
    workers: int = 1
    fitness_cases: Optional[np.ndarray] = None

    def resolved_config(self) -> AlgoConfig:
        """Config with the archive capacity defaulted to the population size."""
        if self.variant == 'archive' and self.config.archive_capacity is None:
            return self.config.replace(archive_capacity=self.config.pop_size)
        return self.config

    def validate(self) -> 'ExperimentSpec':
        if self.variant not in VARIANTS:
            raise ValueError(f"Unknown variant '{self.variant}'")
        if self.variant == 'classic':
            if self.fitness_cases is None:
                raise ValueError("The classic variant needs fitness cases")
        elif self.problem is None or self.problem.lower() not in PROBLEMS:
            raise KeyError(f"Unknown problem '{self.problem}'; choose from {', '.join(PROBLEMS)}")
        if self.fmt not in ('csv', 'tsv'):
            raise ValueError(f"Unknown output format '{self.fmt}'")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")
        self.resolved_config().validate(self.variant)
        return self


def load_fitness_cases(filepath: Union[str, Path]) -> np.ndarray:
    """Read fitness cases from CSV: terminal columns first, target last."""
    frame = pd.read_csv(filepath)
    if frame.shape[0] == 0 or frame.shape[1] < 2:
        raise ValueError(f"{filepath}: need at least one row and two columns")
    non_numeric = [c for c in frame.columns if not pd.api.types.is_numeric_dtype(frame[c])]
    if non_numeric:
        raise ValueError(f"{filepath}: non-numeric columns {non_numeric}")
    return frame.to_numpy(dtype=float)


def _execute(problem: Optional[str], variant: str, cfg: AlgoConfig, seed: int,
             fitness_cases: Optional[np.ndarray]) -> Union[RunRecord, ClassicResult]:
    rng = RandomSource(seed)
    if variant == 'classic':
        return run_classic(fitness_cases, cfg, rng)
    return MO_RUNNERS[variant](get_problem(problem), cfg, rng)


def run_batch(spec: ExperimentSpec) -> List[Union[RunRecord, ClassicResult]]:
    """Execute ``cfg.runs`` seeded runs of the experiment, in run-index order."""
    spec.validate()
    cfg = spec.resolved_config()
    base = RandomSource(cfg.seed)
    seeds = [base.spawn(i).seed for i in range(cfg.runs)]
    args = [(spec.problem, spec.variant, cfg, seed, spec.fitness_cases) for seed in seeds]

    logger.info("Running %d %s run(s) of %s on %d worker(s)",
                cfg.runs, spec.variant, spec.problem or 'fitness cases', spec.workers)
    if spec.workers == 1:
        return [_execute(*a) for a in args]
    with ProcessPoolExecutor(max_workers=spec.workers) as pool:
        return list(pool.map(_execute, *zip(*args)))


def _mean_std(values) -> Dict[str, float]:
    values = np.asarray(values, dtype=float)
    return {'mean': float(np.mean(values)), 'std': float(np.std(values))}


def summarize(spec: ExperimentSpec, results: List[Union[RunRecord, ClassicResult]]) -> Dict[str, Any]:
    """Config echo, per-run statistics and batch aggregates (no timings)."""
    cfg = spec.resolved_config()
    summary: Dict[str, Any] = {
        'problem': spec.problem,
        'variant': spec.variant,
        'config': cfg.to_dict(),
    }

    if spec.variant == 'classic':
        runs = [{'run': i, 'seed': r.seed, 'q': r.q, 'evaluations': r.evaluations}
                for i, r in enumerate(results)]
        q = _mean_std([r.q for r in results])
        summary['runs'] = runs
        summary['aggregate'] = {
            'mean_q': q['mean'],
            'std_q': q['std'],
            'best_q': float(min(r.q for r in results)),
            'solved_runs': sum(1 for r in results if r.q < SOLVED_Q),
        }
        return summary

    runs = [{
        'run': i,
        'seed': r.seed,
        'final_cm': r.final.cm,
        'final_dm': r.final.dm,
        'front_size': len(r.front),
        'evaluations': r.evaluations,
    } for i, r in enumerate(results)]
    cm = _mean_std([r['final_cm'] for r in runs])
    dm = _mean_std([r['final_dm'] for r in runs])

    summary['runs'] = runs
    summary['aggregate'] = {
        'mean_cm': cm['mean'],
        'std_cm': cm['std'],
        'mean_dm': dm['mean'],
        'std_dm': dm['std'],
        'mean_front_size': float(np.mean([r['front_size'] for r in runs])),
        'mean_evaluations': float(np.mean([r['evaluations'] for r in runs])),
    }
    summary['series'] = [
        {'generation': int(g), 'mean_cm': float(cm_), 'mean_dm': float(dm_)}
        for g, cm_, dm_ in mean_series(results).itertuples(index=False)
    ]
    return summary


def mean_series(results: List[RunRecord]) -> pd.DataFrame:
    """Mean CM and DM per sampled generation across runs."""
    frame = pd.DataFrame([
        {'generation': s.generation, 'cm': s.cm, 'dm': s.dm}
        for r in results for s in r.samples
    ])
    grouped = frame.groupby('generation', sort=True)[['cm', 'dm']].mean().reset_index()
    grouped['generation'] = grouped['generation'].astype(int)
    return grouped.rename(columns={'cm': 'mean_cm', 'dm': 'mean_dm'})


def timings(results: List[Union[RunRecord, ClassicResult]]) -> Dict[str, Any]:
    seconds = [r.seconds for r in results]
    return {
        'runs': [{'run': i, 'seconds': s} for i, s in enumerate(seconds)],
        'mean_seconds': float(np.mean(seconds)),
    }
