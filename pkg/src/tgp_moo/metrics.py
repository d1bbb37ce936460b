"""
Convergence and diversity metrics against a sampled Pareto-optimal front.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .dominance import objective_matrix


@dataclass(frozen=True)
class MetricSample:
    """Metric values of one generation's nondominated set."""
    generation: int
    cm: float
    dm: float


def _distances(front: Sequence, reference: Sequence) -> np.ndarray:
    F = objective_matrix(front)
    R = objective_matrix(reference)
    if F.shape[0] == 0:
        raise ValueError("Front must not be empty")
    if R.shape[0] == 0:
        raise ValueError("Reference front must not be empty")
    return cdist(F, R)


def convergence_metric(front: Sequence, reference: Sequence) -> float:
    """Mean Euclidean distance from each front point to its nearest reference point.

    Lower is better; zero when every front point lies on the reference set.
    """
    return float(np.mean(np.min(_distances(front, reference), axis=1)))


def diversity_metric(front: Sequence, reference: Sequence) -> float:
    """Fraction of reference points that are the nearest one to some front point.

    Ties go to the lowest reference index. Higher is better.
    """
    D = _distances(front, reference)
    marked = np.unique(np.argmin(D, axis=1))
    return marked.size / D.shape[1]


def sample(generation: int, front: Sequence, reference: Sequence) -> MetricSample:
    return MetricSample(generation,
                        convergence_metric(front, reference),
                        diversity_metric(front, reference))
