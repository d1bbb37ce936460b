"""
Evolutionary loops for Traceless GP.

Three generational algorithms share the same offspring step (insertion with
probability ``p_insert``, otherwise crossover of arity-many selected parents):

- ``run_classic``: symbolic regression on fitness cases, single-best elitism.
- ``run_mo_plain``: multiobjective, every nondominated member is carried over.
- ``run_mo_archive``: multiobjective with a bounded external archive; parents
  are drawn uniformly from archive and population, nothing is carried over.
"""

import dataclasses
import itertools
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .archive import Archive, prune_to_size
from .core import (CLASSIC_FUNCTION_SET, MOO_FUNCTION_SET, FunctionSymbol, Genome,
                   RandomSource, crossover, insert_random, pick_symbol, raw_crossover,
                   resolve_symbols)
from .dominance import EvaluatedIndividual, dominates, nondominated_filter
from .metrics import MetricSample, sample
from .problems import DEFAULT_REFERENCE_POINTS, Problem, decode, reference_front
from .utils import load_yaml

logger = logging.getLogger(__name__)

VARIANTS = ('plain', 'archive', 'classic')


@dataclass(frozen=True)
class AlgoConfig:
    """Algorithm parameters. Defaults are the published experiment settings."""
    pop_size: int = 100
    generations: int = 250
    p_insert: float = 0.05
    tournament_size: int = 2
    function_set: Optional[Tuple[str, ...]] = None
    archive_capacity: Optional[int] = None
    runs: int = 30
    metric_stride: int = 10
    seed: int = 0
    reference_points: int = DEFAULT_REFERENCE_POINTS
    constant_range: Tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        if self.function_set is not None:
            object.__setattr__(self, 'function_set', tuple(self.function_set))
        object.__setattr__(self, 'constant_range', tuple(self.constant_range))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AlgoConfig':
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_yaml(cls, filepath: Union[str, Path]) -> 'AlgoConfig':
        return cls.from_dict(load_yaml(filepath))

    def replace(self, **overrides) -> 'AlgoConfig':
        """Copy with every non-None override applied."""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        data = dataclasses.asdict(self)
        data['function_set'] = list(self.function_set) if self.function_set else None
        data['constant_range'] = list(self.constant_range)
        return data

    def validate(self, variant: str = 'plain') -> 'AlgoConfig':
        if variant not in VARIANTS:
            raise ValueError(f"Unknown variant '{variant}'; choose from {', '.join(VARIANTS)}")
        if self.pop_size < 2:
            raise ValueError(f"pop_size must be at least 2, got {self.pop_size}")
        if self.generations < 0:
            raise ValueError(f"generations must be non-negative, got {self.generations}")
        if not 0.0 <= self.p_insert <= 1.0:
            raise ValueError(f"p_insert must lie in [0, 1], got {self.p_insert}")
        if self.tournament_size < 1:
            raise ValueError(f"tournament_size must be positive, got {self.tournament_size}")
        if self.runs < 1:
            raise ValueError(f"runs must be positive, got {self.runs}")
        if self.metric_stride < 1:
            raise ValueError(f"metric_stride must be positive, got {self.metric_stride}")
        if self.reference_points < 2:
            raise ValueError(f"reference_points must be at least 2, got {self.reference_points}")
        if self.archive_capacity is not None and self.archive_capacity < 1:
            raise ValueError(f"archive_capacity must be positive, got {self.archive_capacity}")
        if variant == 'archive' and self.archive_capacity is None:
            raise ValueError("The archive variant requires archive_capacity")
        lo, hi = self.constant_range
        if not lo <= hi:
            raise ValueError(f"constant_range must be ordered, got {self.constant_range}")
        symbols = self.symbols(variant)
        if variant != 'classic':
            bad = [s.name for s in symbols if s.bounded_eval is None]
            if bad:
                raise ValueError(f"Symbols without a [0,1] form cannot be used here: {bad}")
        return self

    def symbols(self, variant: str = 'plain') -> List[FunctionSymbol]:
        default = CLASSIC_FUNCTION_SET if variant == 'classic' else MOO_FUNCTION_SET
        return resolve_symbols(self.function_set or default)


@dataclass
class RunRecord:
    """Outcome of one seeded multiobjective run."""
    seed: int
    problem: str
    variant: str
    samples: List[MetricSample] = field(default_factory=list)
    front: List[EvaluatedIndividual] = field(default_factory=list)
    evaluations: int = 0
    seconds: float = 0.0

    @property
    def final(self) -> MetricSample:
        return self.samples[-1]


@dataclass
class ClassicResult:
    """Outcome of one symbolic-regression run."""
    seed: int
    best_outputs: np.ndarray
    q: float
    q_history: List[float] = field(default_factory=list)
    evaluations: int = 0
    seconds: float = 0.0


def tournament(pop: Sequence[EvaluatedIndividual], rng: RandomSource,
               size: int = 2) -> EvaluatedIndividual:
    """Dominance tournament with replacement; incomparable pairs go to a coin flip."""
    if not pop:
        raise ValueError("Cannot select from an empty population")
    winner = pop[rng.index(len(pop))]
    for _ in range(size - 1):
        challenger = pop[rng.index(len(pop))]
        if dominates(challenger.objectives, winner.objectives):
            winner = challenger
        elif not dominates(winner.objectives, challenger.objectives):
            if rng.random() < 0.5:
                winner = challenger
    return winner


def binary_tournament(pop: Sequence[EvaluatedIndividual], rng: RandomSource) -> EvaluatedIndividual:
    return tournament(pop, rng, 2)


class _MORun:
    """State shared by the multiobjective loops during one run."""

    def __init__(self, problem: Problem, cfg: AlgoConfig, rng: RandomSource, variant: str):
        self.problem = problem
        self.cfg = cfg
        self.rng = rng
        self.symbols = cfg.symbols(variant)
        self.reference = reference_front(problem.name, cfg.reference_points)
        self.record = RunRecord(seed=rng.seed, problem=problem.name, variant=variant)
        self._ids = itertools.count()
        self._started = time.perf_counter()
        logger.info("Starting %s run on %s (seed %d): %d individuals, %d generations",
                    variant, problem.name, rng.seed, cfg.pop_size, cfg.generations)

    def evaluate(self, genome: Genome) -> EvaluatedIndividual:
        self.record.evaluations += 1
        objectives = self.problem.evaluate(decode(genome, self.problem))
        return EvaluatedIndividual(genome, objectives, next(self._ids))

    def initial_population(self) -> List[EvaluatedIndividual]:
        return [self.evaluate(insert_random(self.problem.m, self.rng))
                for _ in range(self.cfg.pop_size)]

    def offspring(self, n: int, select: Callable[[], EvaluatedIndividual]) -> List[EvaluatedIndividual]:
        children = []
        for _ in range(n):
            if self.rng.random() < self.cfg.p_insert:
                genome = insert_random(self.problem.m, self.rng)
            else:
                symbol = pick_symbol(self.rng, self.symbols)
                genome = crossover([select().genome for _ in range(symbol.arity)], symbol)
            children.append(self.evaluate(genome))
        return children

    def observe(self, generation: int, front: Sequence[EvaluatedIndividual]):
        if generation % self.cfg.metric_stride and generation != self.cfg.generations:
            return
        point = sample(generation, front, self.reference)
        self.record.samples.append(point)
        logger.debug("%s gen %d: CM=%.6g DM=%.4g front=%d",
                     self.problem.name, generation, point.cm, point.dm, len(front))

    def finish(self, front: List[EvaluatedIndividual]) -> RunRecord:
        self.record.front = list(front)
        self.record.seconds = time.perf_counter() - self._started
        logger.info("Finished %s on %s (seed %d): %d evaluations, front of %d, CM=%.6g DM=%.4g",
                    self.record.variant, self.problem.name, self.record.seed,
                    self.record.evaluations, len(front),
                    self.record.final.cm, self.record.final.dm)
        return self.record


def run_mo_plain(problem: Problem, cfg: AlgoConfig, rng: RandomSource) -> RunRecord:
    """Multiobjective TGP copying all nondominated members into the next population.

    If the nondominated set leaves no room for offspring it is pruned by the
    archive's closest-pair rule to ``pop_size - 1`` members.
    """
    cfg.validate('plain')
    run = _MORun(problem, cfg, rng, 'plain')

    pop = run.initial_population()
    run.observe(0, nondominated_filter(pop))

    for generation in range(1, cfg.generations + 1):
        elites = nondominated_filter(pop)
        if len(elites) > cfg.pop_size - 1:
            elites = prune_to_size(elites, cfg.pop_size - 1)

        current = pop
        pop = elites + run.offspring(cfg.pop_size - len(elites),
                                     lambda: tournament(current, rng, cfg.tournament_size))
        run.observe(generation, nondominated_filter(pop))

    return run.finish(nondominated_filter(pop))


def run_mo_archive(problem: Problem, cfg: AlgoConfig, rng: RandomSource) -> RunRecord:
    """Multiobjective TGP with an external archive.

    Parents come uniformly from archive and current population together;
    the returned front and the metrics are taken over the archive.
    """
    cfg.validate('archive')
    run = _MORun(problem, cfg, rng, 'archive')

    pop = run.initial_population()
    archive = Archive(cfg.archive_capacity).update(pop)
    run.observe(0, archive.members)

    for generation in range(1, cfg.generations + 1):
        pool = archive.members + pop
        pop = run.offspring(cfg.pop_size, lambda: pool[rng.index(len(pool))])
        archive = archive.update(pop)
        run.observe(generation, archive.members)

    return run.finish(archive.members)


MO_RUNNERS = {
    'plain': run_mo_plain,
    'archive': run_mo_archive,
}


# Symbolic regression


@dataclass
class ClassicIndividual:
    outputs: np.ndarray
    q: float


def q_fitness(outputs: np.ndarray, target: np.ndarray) -> float:
    """Sum of absolute errors over the fitness cases; non-finite outputs score inf."""
    with np.errstate(all='ignore'):
        q = float(np.sum(np.abs(target - outputs)))
    return q if np.isfinite(q) else float('inf')


def _q_tournament(pop: Sequence[ClassicIndividual], rng: RandomSource, size: int) -> ClassicIndividual:
    winner = pop[rng.index(len(pop))]
    for _ in range(size - 1):
        challenger = pop[rng.index(len(pop))]
        if challenger.q < winner.q:
            winner = challenger
    return winner


def run_classic(fitness_cases, cfg: AlgoConfig, rng: RandomSource) -> ClassicResult:
    """Traceless GP for symbolic regression.

    ``fitness_cases`` has one row per case: the terminal values followed by
    the target. Individuals are the vectors of outputs over all cases.
    Constant chromosomes only seed the initial population; insertion always
    brings back a terminal column.
    """
    cfg.validate('classic')
    cases = np.asarray(fitness_cases, dtype=float)
    if cases.ndim != 2 or cases.shape[0] < 1:
        raise ValueError("Fitness cases must be a non-empty 2-D table")
    if cases.shape[1] < 2:
        raise ValueError("Fitness cases need at least one terminal column and a target")

    terminals, target = cases[:, :-1], cases[:, -1]
    m, n = terminals.shape
    lo, hi = cfg.constant_range
    symbols = cfg.symbols('classic')
    result = ClassicResult(seed=rng.seed, best_outputs=np.empty(0), q=float('inf'))
    started = time.perf_counter()

    def scored(outputs: np.ndarray) -> ClassicIndividual:
        result.evaluations += 1
        return ClassicIndividual(outputs, q_fitness(outputs, target))

    def terminal() -> ClassicIndividual:
        return scored(terminals[:, rng.index(n)].copy())

    def constant() -> ClassicIndividual:
        return scored(lo + rng.uniform(m) * (hi - lo))

    logger.info("Starting classic run (seed %d): %d cases, %d terminals", rng.seed, m, n)
    pop = [terminal() if i % 2 == 0 else constant() for i in range(cfg.pop_size)]

    for generation in range(cfg.generations + 1):
        best = min(pop, key=lambda ind: ind.q)
        result.q_history.append(best.q)
        if generation == cfg.generations:
            break

        nxt = [best]
        while len(nxt) < cfg.pop_size:
            if rng.random() < cfg.p_insert:
                nxt.append(terminal())
            else:
                symbol = pick_symbol(rng, symbols)
                parents = [_q_tournament(pop, rng, cfg.tournament_size).outputs
                           for _ in range(symbol.arity)]
                nxt.append(scored(raw_crossover(parents, symbol)))
        pop = nxt

    result.best_outputs = best.outputs
    result.q = best.q
    result.seconds = time.perf_counter() - started
    logger.info("Finished classic run (seed %d): best Q=%.6g", rng.seed, best.q)
    return result
