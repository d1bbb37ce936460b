"""
Export experiment results to CSV/TSV and JSON files.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import pandas as pd

from .dominance import EvaluatedIndividual
from .engine import ClassicResult, RunRecord
from .problems import ObjectivePoint, Problem, decode, get_problem
from .utils import FLOAT_FORMAT, save_json

logger = logging.getLogger(__name__)

SEPARATORS = {'csv': ',', 'tsv': '\t'}


class ResultExporter:
    def __init__(self, out_dir: Union[str, Path], fmt: str = 'csv'):
        if fmt not in SEPARATORS:
            raise ValueError(f"Unknown table format '{fmt}'")
        self.out_dir = Path(out_dir)
        self.fmt = fmt
        self.out_dir.mkdir(parents=True, exist_ok=True)

    def _table(self, frame: pd.DataFrame, stem: str) -> Path:
        path = self.out_dir / f"{stem}.{self.fmt}"
        frame.to_csv(path, sep=SEPARATORS[self.fmt], index=False, float_format=FLOAT_FORMAT)
        return path

    def to_reference_front(self, problem: str, points: Sequence[ObjectivePoint]) -> Path:
        """Write ``front_<problem>`` with columns f1, f2."""
        frame = pd.DataFrame([tuple(p) for p in points], columns=['f1', 'f2'])
        return self._table(frame, f"front_{problem}")

    def to_run_front(self, index: int, front: List[EvaluatedIndividual], problem: Problem) -> Path:
        """Write ``run_<i>_front``: objectives followed by decoded variables."""
        columns = ['f1', 'f2'] + [f"x{k + 1}" for k in range(problem.m)]
        rows = [list(ind.objectives) + list(decode(ind.genome, problem)) for ind in front]
        return self._table(pd.DataFrame(rows, columns=columns), f"run_{index}_front")

    def to_run_metrics(self, index: int, record: RunRecord) -> Path:
        frame = pd.DataFrame([(s.generation, s.cm, s.dm) for s in record.samples],
                             columns=['generation', 'cm', 'dm'])
        return self._table(frame, f"run_{index}_metrics")

    def to_mean_metrics(self, summary: Dict[str, Any]) -> Path:
        frame = pd.DataFrame(summary['series'], columns=['generation', 'mean_cm', 'mean_dm'])
        return self._table(frame, 'mean_metrics')

    def to_classic_history(self, index: int, result: ClassicResult) -> Path:
        frame = pd.DataFrame({'generation': range(len(result.q_history)),
                              'best_q': result.q_history})
        return self._table(frame, f"run_{index}_history")

    def to_summary(self, summary: Dict[str, Any]) -> Path:
        path = self.out_dir / 'summary.json'
        save_json(summary, path)
        return path

    def to_timings(self, timing: Dict[str, Any]) -> Path:
        path = self.out_dir / 'timings.json'
        save_json(timing, path)
        return path

    def export_batch(self, results: List[Union[RunRecord, ClassicResult]],
                     summary: Dict[str, Any], timing: Dict[str, Any]) -> List[Path]:
        """Write every per-run file, then the summary and timings."""
        written = []
        if summary['variant'] == 'classic':
            for i, result in enumerate(results):
                written.append(self.to_classic_history(i, result))
        else:
            problem = get_problem(summary['problem'])
            for i, record in enumerate(results):
                written.append(self.to_run_front(i, record.front, problem))
                written.append(self.to_run_metrics(i, record))
            written.append(self.to_mean_metrics(summary))
        written.append(self.to_summary(summary))
        written.append(self.to_timings(timing))
        logger.info("Wrote %d files to %s", len(written), self.out_dir)
        return written
