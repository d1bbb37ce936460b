"""
Core module for Traceless GP individuals and operators.

A TGP individual stores only the values its (never stored) expression
produced, one per gene. Crossover applies a function symbol gene by gene
across its parents; insertion creates a fresh single-terminal individual.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

# Raw-mode division falls back to the numerator below this denominator.
PROTECTED_DIVISION_EPS = 1e-9

_SIN_1 = math.sin(1.0)
_EXP_1 = math.e


class RandomSource:
    """Seeded random stream owned by a single run.

    Wraps a numpy ``Generator``; two sources built from the same seed
    produce identical gene streams, symbol picks and selection draws.
    """

    def __init__(self, seed: int = 0):
        if seed < 0 or seed >= 2 ** 64:
            raise ValueError(f"Seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)
        self.generator = np.random.default_rng(self.seed)

    def spawn(self, index: int) -> 'RandomSource':
        """Source for run ``index`` of a batch seeded from this one."""
        return RandomSource((self.seed + index) % 2 ** 64)

    def uniform(self, size: int) -> np.ndarray:
        return self.generator.random(size)

    def random(self) -> float:
        return float(self.generator.random())

    def index(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        return int(self.generator.integers(n))


@dataclass(frozen=True, eq=False)
class Genome:
    """Fixed-length vector of gene values in [0, 1]."""
    genes: np.ndarray

    def __post_init__(self):
        genes = np.array(self.genes, dtype=float)
        if genes.ndim != 1 or genes.size == 0:
            raise ValueError("Genome must be a non-empty 1-D vector")
        if not np.all((genes >= 0.0) & (genes <= 1.0)):
            raise ValueError("Genome genes must lie in [0, 1]")
        genes.setflags(write=False)
        object.__setattr__(self, 'genes', genes)

    def __len__(self) -> int:
        return self.genes.size


@dataclass(frozen=True)
class FunctionSymbol:
    """An elementwise operator usable by TGP crossover.

    ``bounded_eval`` is the [0,1]-closed redefinition used when genes encode
    decision variables; ``raw_eval`` is the plain operator used in symbolic
    regression. Symbols without a closed form (division) have no
    ``bounded_eval``.
    """
    name: str
    arity: int
    raw_eval: Callable[..., np.ndarray] = field(repr=False)
    bounded_eval: Optional[Callable[..., np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self):
        if self.arity not in (1, 2):
            raise ValueError(f"Unsupported arity {self.arity} for symbol '{self.name}'")


def bounded_add(x, y):
    return (np.asarray(x) + np.asarray(y)) / 2.0


def bounded_sub(x, y):
    return np.abs(np.asarray(x) - np.asarray(y))


def bounded_mul(x, y):
    return np.asarray(x) * np.asarray(y)


def bounded_sin(x):
    return np.clip(np.sin(x) / _SIN_1, 0.0, 1.0)


def bounded_exp(x):
    return np.clip(np.exp(x) / _EXP_1, 0.0, 1.0)


def protected_div(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    small = np.abs(y) < PROTECTED_DIVISION_EPS
    return np.where(small, x, x / np.where(small, 1.0, y))


FUNCTION_SYMBOLS: Dict[str, FunctionSymbol] = {
    '+': FunctionSymbol('+', 2, np.add, bounded_add),
    '-': FunctionSymbol('-', 2, np.subtract, bounded_sub),
    '*': FunctionSymbol('*', 2, np.multiply, bounded_mul),
    '/': FunctionSymbol('/', 2, protected_div),
    'sin': FunctionSymbol('sin', 1, np.sin, bounded_sin),
    'exp': FunctionSymbol('exp', 1, np.exp, bounded_exp),
}

MOO_FUNCTION_SET = ('+', '-', '*', 'sin', 'exp')
CLASSIC_FUNCTION_SET = ('+', '-', '*', '/', 'sin')


def resolve_symbols(names: Sequence[str]) -> List[FunctionSymbol]:
    """Look up function symbols by name."""
    if not names:
        raise ValueError("Function set must not be empty")
    symbols = []
    for name in names:
        if name not in FUNCTION_SYMBOLS:
            raise KeyError(f"Unknown function symbol '{name}'")
        symbols.append(FUNCTION_SYMBOLS[name])
    return symbols


def _check_parents(parents: Sequence, symbol: FunctionSymbol) -> None:
    if len(parents) != symbol.arity:
        raise ValueError(
            f"Symbol '{symbol.name}' takes {symbol.arity} parent(s), got {len(parents)}"
        )
    lengths = {len(p) for p in parents}
    if len(lengths) != 1:
        raise ValueError(f"Parents have different lengths: {sorted(lengths)}")


def crossover(parents: Sequence[Genome], symbol: FunctionSymbol) -> Genome:
    """Apply ``symbol`` gene by gene to the parents using its bounded form."""
    _check_parents(parents, symbol)
    if symbol.bounded_eval is None:
        raise ValueError(f"Symbol '{symbol.name}' has no bounded redefinition")
    return Genome(symbol.bounded_eval(*(p.genes for p in parents)))


def raw_crossover(parents: Sequence[np.ndarray], symbol: FunctionSymbol) -> np.ndarray:
    """Unbounded crossover over output vectors (symbolic regression)."""
    _check_parents(parents, symbol)
    with np.errstate(all='ignore'):
        return np.asarray(symbol.raw_eval(*parents), dtype=float)


def insert_random(m: int, rng: RandomSource) -> Genome:
    """A single-terminal individual: m independent uniform genes."""
    if m < 1:
        raise ValueError(f"Gene count must be at least 1, got {m}")
    return Genome(rng.uniform(m))


def pick_symbol(rng: RandomSource, symbols: Sequence[FunctionSymbol]) -> FunctionSymbol:
    """Uniform choice over the function set."""
    if not symbols:
        raise ValueError("Cannot pick from an empty function set")
    return symbols[rng.index(len(symbols))]
