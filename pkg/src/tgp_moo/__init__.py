"""
Traceless Genetic Programming for multiobjective optimization.
"""

from .archive import Archive
from .core import (FUNCTION_SYMBOLS, FunctionSymbol, Genome, RandomSource, crossover,
                   insert_random, pick_symbol)
from .dominance import EvaluatedIndividual, dominates, nondominated_filter
from .engine import (AlgoConfig, RunRecord, binary_tournament, run_classic, run_mo_archive,
                     run_mo_plain)
from .metrics import MetricSample, convergence_metric, diversity_metric
from .problems import PROBLEMS, ObjectivePoint, Problem, decode, get_problem, true_front

__version__ = '1.0.0'

__all__ = [
    'Archive',
    'FUNCTION_SYMBOLS',
    'FunctionSymbol',
    'Genome',
    'RandomSource',
    'crossover',
    'insert_random',
    'pick_symbol',
    'EvaluatedIndividual',
    'dominates',
    'nondominated_filter',
    'AlgoConfig',
    'RunRecord',
    'binary_tournament',
    'run_classic',
    'run_mo_archive',
    'run_mo_plain',
    'MetricSample',
    'convergence_metric',
    'diversity_metric',
    'PROBLEMS',
    'ObjectivePoint',
    'Problem',
    'decode',
    'get_problem',
    'true_front',
]
