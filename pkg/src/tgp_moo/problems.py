"""
ZDT biobjective test problems.

Genes always live in [0, 1]; each problem decodes them affinely into its own
variable ranges before evaluation. Every front is the set of points with
g(x) = 1.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, NamedTuple, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .core import Genome

DEFAULT_REFERENCE_POINTS = 200

# Resolution of the f1 sweep used to locate ZDT3's nondominated intervals.
ZDT3_SWEEP_POINTS = 100_000


class ObjectivePoint(NamedTuple):
    f1: float
    f2: float


@dataclass(frozen=True, eq=False)
class Problem:
    """A biobjective test problem over a box of decision variables."""
    name: str
    m: int
    lower: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)
    objective: Callable[[np.ndarray], ObjectivePoint] = field(repr=False)
    front_sampler: Callable[[int], List[ObjectivePoint]] = field(repr=False)

    def decode(self, genome: Genome) -> np.ndarray:
        return decode(genome, self)

    def evaluate(self, x: np.ndarray) -> ObjectivePoint:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.m,):
            raise ValueError(f"{self.name} expects {self.m} variables, got shape {x.shape}")
        if np.any(x < self.lower) or np.any(x > self.upper) or not np.all(np.isfinite(x)):
            raise ValueError(f"{self.name}: decision vector outside the variable box")
        return self.objective(x)

    def true_front(self, n_ref: int = DEFAULT_REFERENCE_POINTS) -> List[ObjectivePoint]:
        return true_front(self, n_ref)


def decode(genome: Genome, problem: Problem) -> np.ndarray:
    """Map genes in [0,1] to the problem's decision variables."""
    if len(genome) != problem.m:
        raise ValueError(
            f"Genome length {len(genome)} does not match {problem.name} gene count {problem.m}"
        )
    return problem.lower + genome.genes * (problem.upper - problem.lower)


def _linear_g(x: np.ndarray) -> float:
    return 1.0 + 9.0 * float(np.sum(x[1:])) / (x.size - 1)


def _zdt1(x: np.ndarray) -> ObjectivePoint:
    f1 = float(x[0])
    g = _linear_g(x)
    return ObjectivePoint(f1, g * (1.0 - np.sqrt(f1 / g)))


def _zdt2(x: np.ndarray) -> ObjectivePoint:
    f1 = float(x[0])
    g = _linear_g(x)
    return ObjectivePoint(f1, g * (1.0 - (f1 / g) ** 2))


def _zdt3(x: np.ndarray) -> ObjectivePoint:
    f1 = float(x[0])
    g = _linear_g(x)
    ratio = f1 / g
    return ObjectivePoint(f1, g * (1.0 - np.sqrt(ratio) - ratio * np.sin(10.0 * np.pi * f1)))


def _zdt4(x: np.ndarray) -> ObjectivePoint:
    f1 = float(x[0])
    tail = x[1:]
    g = 1.0 + 10.0 * tail.size + float(np.sum(tail ** 2 - 10.0 * np.cos(4.0 * np.pi * tail)))
    return ObjectivePoint(f1, g * (1.0 - np.sqrt(f1 / g)))


def _zdt6_f1(x1):
    return 1.0 - np.exp(-4.0 * x1) * np.sin(6.0 * np.pi * x1) ** 6


def _zdt6(x: np.ndarray) -> ObjectivePoint:
    f1 = float(_zdt6_f1(x[0]))
    g = 1.0 + 9.0 * (float(np.sum(x[1:])) / (x.size - 1)) ** 0.25
    return ObjectivePoint(f1, g * (1.0 - (f1 / g) ** 2))


def _as_points(f1: np.ndarray, f2: np.ndarray) -> List[ObjectivePoint]:
    return [ObjectivePoint(float(a), float(b)) for a, b in zip(f1, f2)]


def _sqrt_front(n_ref: int) -> List[ObjectivePoint]:
    f1 = np.linspace(0.0, 1.0, n_ref)
    return _as_points(f1, 1.0 - np.sqrt(f1))


def _square_front(n_ref: int, f1_min: float = 0.0) -> List[ObjectivePoint]:
    f1 = np.linspace(f1_min, 1.0, n_ref)
    return _as_points(f1, 1.0 - f1 ** 2)


def _zdt3_curve(f1):
    return 1.0 - np.sqrt(f1) - f1 * np.sin(10.0 * np.pi * f1)


@lru_cache(maxsize=None)
def zdt3_front_intervals(sweep_points: int = ZDT3_SWEEP_POINTS) -> Tuple[Tuple[float, float], ...]:
    """Nondominated f1-intervals of ZDT3's front, found by a dense sweep."""
    f1 = np.linspace(0.0, 1.0, sweep_points)
    f2 = _zdt3_curve(f1)
    # f1 is strictly increasing, so a point is nondominated iff it beats
    # every f2 to its left.
    best_left = np.minimum.accumulate(np.concatenate(([np.inf], f2[:-1])))
    nondominated = f2 < best_left

    intervals = []
    start = None
    for i, flag in enumerate(nondominated):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            intervals.append((float(f1[start]), float(f1[i - 1])))
            start = None
    if start is not None:
        intervals.append((float(f1[start]), float(f1[-1])))
    return tuple(intervals)


def _allocate(lengths: np.ndarray, total: int) -> np.ndarray:
    """Split ``total`` samples proportionally to ``lengths`` by largest remainder; short intervals may get none."""
    share = lengths / lengths.sum() * total
    counts = np.floor(share).astype(int)
    order = np.argsort(-(share - counts), kind='stable')
    counts[order[:total - counts.sum()]] += 1
    return counts


def _interval_samples(lo: float, hi: float, k: int) -> np.ndarray:
    if k == 1:
        return np.array([lo])
    return np.linspace(lo, hi, k)


def _zdt3_front(n_ref: int) -> List[ObjectivePoint]:
    intervals = zdt3_front_intervals()
    lengths = np.array([hi - lo for lo, hi in intervals])
    counts = _allocate(lengths, n_ref)
    f1 = np.concatenate([_interval_samples(lo, hi, k) for (lo, hi), k in zip(intervals, counts)])
    return _as_points(f1, _zdt3_curve(f1))


@lru_cache(maxsize=None)
def zdt6_f1_min() -> float:
    """Smallest reachable ZDT6 f1, the left end of its front."""
    grid = np.linspace(0.0, 1.0, 10_001)
    i = int(np.argmin(_zdt6_f1(grid)))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    result = minimize_scalar(_zdt6_f1, bounds=(lo, hi), method='bounded',
                             options={'xatol': 1e-12})
    return float(result.fun)


def _zdt6_front(n_ref: int) -> List[ObjectivePoint]:
    return _square_front(n_ref, zdt6_f1_min())


def true_front(problem: Problem, n_ref: int = DEFAULT_REFERENCE_POINTS) -> List[ObjectivePoint]:
    """``n_ref`` points equidistant in f1 along the Pareto-optimal front."""
    if n_ref < 2:
        raise ValueError(f"Need at least 2 reference points, got {n_ref}")
    return problem.front_sampler(n_ref)


@lru_cache(maxsize=None)
def reference_front(name: str, n_ref: int = DEFAULT_REFERENCE_POINTS) -> np.ndarray:
    """Cached ``true_front`` as an (n_ref, 2) array."""
    array = np.array(true_front(get_problem(name), n_ref), dtype=float)
    array.setflags(write=False)
    return array


def _box(m: int, tail_lower: float = 0.0, tail_upper: float = 1.0):
    lower = np.full(m, tail_lower)
    upper = np.full(m, tail_upper)
    lower[0], upper[0] = 0.0, 1.0
    return lower, upper


def _make(name: str, m: int, objective, front_sampler, tail=(0.0, 1.0)) -> Problem:
    lower, upper = _box(m, *tail)
    lower.setflags(write=False)
    upper.setflags(write=False)
    return Problem(name, m, lower, upper, objective, front_sampler)


PROBLEMS: Dict[str, Problem] = {
    'zdt1': _make('zdt1', 30, _zdt1, _sqrt_front),
    'zdt2': _make('zdt2', 30, _zdt2, _square_front),
    'zdt3': _make('zdt3', 30, _zdt3, _zdt3_front),
    'zdt4': _make('zdt4', 10, _zdt4, _sqrt_front, tail=(-5.0, 5.0)),
    'zdt6': _make('zdt6', 10, _zdt6, _zdt6_front),
}


def get_problem(name: str) -> Problem:
    key = name.lower()
    if key not in PROBLEMS:
        raise KeyError(f"Unknown problem '{name}'; choose from {', '.join(PROBLEMS)}")
    return PROBLEMS[key]


def zdt1_eval(x) -> ObjectivePoint:
    return PROBLEMS['zdt1'].evaluate(x)


def zdt2_eval(x) -> ObjectivePoint:
    return PROBLEMS['zdt2'].evaluate(x)


def zdt3_eval(x) -> ObjectivePoint:
    return PROBLEMS['zdt3'].evaluate(x)


def zdt4_eval(x) -> ObjectivePoint:
    return PROBLEMS['zdt4'].evaluate(x)


def zdt6_eval(x) -> ObjectivePoint:
    return PROBLEMS['zdt6'].evaluate(x)
