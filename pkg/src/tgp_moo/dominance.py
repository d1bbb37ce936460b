"""
Pareto dominance for two minimized objectives.
"""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .core import Genome
from .problems import ObjectivePoint


@dataclass(frozen=True, eq=False)
class EvaluatedIndividual:
    """A genome together with its objective values.

    ``id`` is a creation counter used to break ties deterministically.
    """
    genome: Genome
    objectives: ObjectivePoint
    id: int


def dominates(a: ObjectivePoint, b: ObjectivePoint) -> bool:
    """True iff ``a`` is no worse than ``b`` in both objectives and better in one."""
    return (a[0] <= b[0] and a[1] <= b[1]) and (a[0] < b[0] or a[1] < b[1])


def objective_matrix(points: Sequence) -> np.ndarray:
    """Stack objective points (or evaluated individuals) into an (n, 2) array."""
    rows = [p.objectives if isinstance(p, EvaluatedIndividual) else p for p in points]
    if not rows:
        return np.empty((0, 2))
    return np.asarray(rows, dtype=float).reshape(len(rows), -1)


def nondominated_mask(objectives: np.ndarray) -> np.ndarray:
    """Boolean mask of rows dominated by no other row."""
    F = np.asarray(objectives, dtype=float)
    if F.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    # weakly[j, i]: row j is no worse than row i everywhere
    weakly = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    strictly = np.any(F[:, None, :] < F[None, :, :], axis=2)
    return ~np.any(weakly & strictly, axis=0)


def nondominated_filter(pop: Sequence[EvaluatedIndividual]) -> List[EvaluatedIndividual]:
    """Members dominated by no other member, in input order.

    Members sharing the same objective point are all kept.
    """
    if not pop:
        return []
    mask = nondominated_mask(objective_matrix(pop))
    return [ind for ind, keep in zip(pop, mask) if keep]
