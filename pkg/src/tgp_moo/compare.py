"""
Comparison of experiment summaries against transcribed published results.

Baseline rows have a role: ``published`` rows are the transcribed TGP
results, shown next to ours as a reproduction check; ``rival`` rows are the
other methods our rows are ranked against.
"""

import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from .utils import FLOAT_FORMAT, load_json

logger = logging.getLogger(__name__)

METHOD_NAMES = {
    'plain': 'TGP',
    'archive': 'TGP with archive',
}

SUMMARY_KEYS = ('problem', 'variant', 'aggregate')
AGGREGATE_KEYS = ('mean_cm', 'mean_dm')
BASELINE_COLUMNS = ('problem', 'method', 'cm', 'dm')
BASELINE_ROLES = ('published', 'rival')
TABLE_COLUMNS = ('problem', 'method', 'cm', 'dm', 'seconds')


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _measured_seconds(summary_path: Path) -> float:
    """Mean seconds per run from the ``timings.json`` next to a summary, NaN if absent."""
    path = summary_path.with_name('timings.json')
    if not path.exists():
        return math.nan
    data = load_json(path)
    if not isinstance(data, dict) or 'mean_seconds' not in data:
        raise ValueError(f"{path}: missing key 'mean_seconds'")
    return _number(data['mean_seconds'], f"{path} key 'mean_seconds'")


class BaselineComparator:
    def __init__(self, baseline_file: Optional[Union[str, Path]] = None):
        self.baseline: List[Dict[str, Any]] = []
        if baseline_file is None:
            return
        if not Path(baseline_file).exists():
            logger.warning("Baseline file %s not found; comparing without it", baseline_file)
            return
        self.baseline = self.load_baseline(baseline_file)

    @property
    def rivals(self) -> List[Dict[str, Any]]:
        return [row for row in self.baseline if row['role'] == 'rival']

    @staticmethod
    def load_baseline(filepath: Union[str, Path]) -> List[Dict[str, Any]]:
        """Load and check the baseline rows."""
        data = load_json(filepath)
        if not isinstance(data, dict) or not isinstance(data.get('baselines'), list):
            raise ValueError(f"{filepath}: no 'baselines' list found")

        rows = []
        for idx, row in enumerate(data['baselines']):
            where = f"{filepath} row {idx}"
            if not isinstance(row, dict):
                raise ValueError(f"{where}: expected an object")
            for column in BASELINE_COLUMNS:
                if column not in row:
                    raise ValueError(f"{where}: missing column '{column}'")
            role = row.get('role', 'rival')
            if role not in BASELINE_ROLES:
                raise ValueError(f"{where} column 'role': expected one of {', '.join(BASELINE_ROLES)}, "
                                 f"got {role!r}")
            seconds = row.get('seconds')
            rows.append({
                'problem': str(row['problem']).lower(),
                'method': str(row['method']),
                'role': role,
                'cm': _number(row['cm'], f"{where} column 'cm'"),
                'dm': _number(row['dm'], f"{where} column 'dm'"),
                'seconds': math.nan if seconds is None else _number(seconds, f"{where} column 'seconds'"),
            })
        return rows

    @staticmethod
    def load_summary(filepath: Union[str, Path]) -> Dict[str, Any]:
        """Load one experiment summary and pull out the comparison row."""
        filepath = Path(filepath)
        data = load_json(filepath)
        if not isinstance(data, dict):
            raise ValueError(f"{filepath}: expected a JSON object")
        for key in SUMMARY_KEYS:
            if key not in data:
                raise ValueError(f"{filepath}: missing key '{key}'")
        if data['variant'] not in METHOD_NAMES:
            raise ValueError(f"{filepath}: variant '{data['variant']}' has no CM/DM to compare")
        aggregate = data['aggregate']
        if not isinstance(aggregate, dict):
            raise ValueError(f"{filepath}: key 'aggregate' must be an object, got {aggregate!r}")
        for key in AGGREGATE_KEYS:
            if key not in aggregate:
                raise ValueError(f"{filepath}: missing key 'aggregate.{key}'")
        return {
            'problem': str(data['problem']).lower(),
            'method': METHOD_NAMES[data['variant']],
            'cm': _number(aggregate['mean_cm'], f"{filepath} key 'aggregate.mean_cm'"),
            'dm': _number(aggregate['mean_dm'], f"{filepath} key 'aggregate.mean_dm'"),
            'seconds': _measured_seconds(filepath),
        }

    def build_table(self, summary_files: List[Union[str, Path]]) -> pd.DataFrame:
        """Per-problem CM/DM/seconds table; our rows list the rivals they beat."""
        ours = [self.load_summary(path) for path in summary_files]
        frame = pd.DataFrame(ours + self.baseline, columns=list(TABLE_COLUMNS))
        frame['cm_better_than'] = ''
        frame['dm_better_than'] = ''

        for i, row in enumerate(ours):
            rivals = [b for b in self.rivals if b['problem'] == row['problem']]
            frame.at[i, 'cm_better_than'] = ','.join(b['method'] for b in rivals if row['cm'] < b['cm'])
            frame.at[i, 'dm_better_than'] = ','.join(b['method'] for b in rivals if row['dm'] > b['dm'])

        order = {name: k for k, name in enumerate(dict.fromkeys(frame['method']))}
        frame['_order'] = frame['method'].map(order)
        frame = frame.sort_values(['problem', '_order'], kind='stable').drop(columns='_order')
        return frame.reset_index(drop=True)

    def generate_comparison_report(self, table: pd.DataFrame,
                                   output_path: Optional[Union[str, Path]] = None) -> str:
        """Render the table as text; optionally also write it as CSV."""
        report = []
        report.append("=" * 80)
        report.append("CONVERGENCE (lower is better), DIVERSITY (higher is better), SECONDS PER RUN")
        report.append("=" * 80)
        if not self.baseline:
            report.append("No baseline loaded; showing TGP results only.")

        for problem, rows in table.groupby('problem', sort=False):
            report.append(f"\n{problem.upper()}")
            report.append(f"  {'method':<30s} {'CM':>10s} {'DM':>8s} {'time (s)':>9s}  beats")
            for _, row in rows.iterrows():
                beats = []
                if row['cm_better_than']:
                    beats.append(f"CM: {row['cm_better_than']}")
                if row['dm_better_than']:
                    beats.append(f"DM: {row['dm_better_than']}")
                seconds = '-' if pd.isna(row['seconds']) else f"{row['seconds']:.3g}"
                report.append(f"  {row['method']:<30s} {row['cm']:>10.6g} {row['dm']:>8.4g} {seconds:>9s}  "
                              f"{'; '.join(beats)}".rstrip())

        report_text = "\n".join(report) + "\n"

        if output_path:
            table.to_csv(output_path, index=False, float_format=FLOAT_FORMAT)
            logger.info("Wrote comparison table to %s", output_path)

        return report_text
