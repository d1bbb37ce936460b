"""
Tests for TGP individuals, function symbols and operators.
"""

import math

import numpy as np
import pytest

from tgp_moo.core import (FUNCTION_SYMBOLS, MOO_FUNCTION_SET, Genome, RandomSource,
                          bounded_add, bounded_exp, bounded_mul, bounded_sin, bounded_sub,
                          crossover, insert_random, pick_symbol, protected_div, raw_crossover,
                          resolve_symbols)


class TestBoundedOperators:
    def test_add(self):
        assert bounded_add(0.4, 0.6) == pytest.approx(0.5)
        assert bounded_add(0.0, 0.0) == 0.0
        assert bounded_add(1.0, 1.0) == 1.0

    def test_sub(self):
        assert bounded_sub(0.3, 0.8) == pytest.approx(0.5)
        assert bounded_sub(0.7, 0.7) == 0.0
        assert bounded_sub(1.0, 0.0) == 1.0

    def test_mul_sin_exp(self):
        assert bounded_mul(0.5, 0.5) == 0.25
        assert bounded_sin(1.0) == pytest.approx(1.0)
        assert bounded_exp(0.0) == pytest.approx(1 / math.e)
        assert bounded_exp(0.0) == pytest.approx(0.367879, abs=1e-6)

    def test_range_closure(self):
        rng = np.random.default_rng(7)
        n = 1_000_000
        x, y = rng.random(n), rng.random(n)
        endpoints = np.array([0.0, 1.0])
        ex, ey = np.meshgrid(endpoints, endpoints)

        for name in MOO_FUNCTION_SET:
            symbol = FUNCTION_SYMBOLS[name]
            if symbol.arity == 1:
                outputs = [symbol.bounded_eval(x), symbol.bounded_eval(endpoints)]
            else:
                outputs = [symbol.bounded_eval(x, y), symbol.bounded_eval(ex.ravel(), ey.ravel())]
            for out in outputs:
                assert np.all(out >= 0.0), name
                assert np.all(out <= 1.0), name

    def test_protected_division(self):
        assert protected_div(3.0, 0.0) == 3.0
        assert protected_div(3.0, 1e-12) == 3.0
        assert protected_div(3.0, 2.0) == 1.5


class TestGenome:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Genome(np.array([0.5, 1.2]))
        with pytest.raises(ValueError):
            Genome(np.array([np.nan]))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Genome(np.array([]))

    def test_genes_are_read_only_copy(self):
        values = np.array([0.1, 0.2])
        genome = Genome(values)
        values[0] = 0.9
        assert genome.genes[0] == 0.1
        with pytest.raises(ValueError):
            genome.genes[0] = 0.3


class TestCrossover:
    def test_binary_add(self):
        child = crossover([Genome([0.4, 0.8]), Genome([0.6, 0.2])], FUNCTION_SYMBOLS['+'])
        np.testing.assert_allclose(child.genes, [0.5, 0.5])

    def test_unary_sin(self):
        child = crossover([Genome([0.0, 1.0])], FUNCTION_SYMBOLS['sin'])
        np.testing.assert_allclose(child.genes, [0.0, 1.0])

    def test_mul(self):
        child = crossover([Genome([0.5, 0.5]), Genome([0.5, 0.5])], FUNCTION_SYMBOLS['*'])
        np.testing.assert_allclose(child.genes, [0.25, 0.25])

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            crossover([Genome([0.5])], FUNCTION_SYMBOLS['+'])
        with pytest.raises(ValueError):
            crossover([Genome([0.5]), Genome([0.5])], FUNCTION_SYMBOLS['sin'])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            crossover([Genome([0.5]), Genome([0.5, 0.5])], FUNCTION_SYMBOLS['-'])

    def test_division_has_no_bounded_form(self):
        with pytest.raises(ValueError):
            crossover([Genome([0.5]), Genome([0.5])], FUNCTION_SYMBOLS['/'])

    def test_length_preserved_and_local(self):
        rng = RandomSource(3)
        a, b = insert_random(30, rng), insert_random(30, rng)
        for name in MOO_FUNCTION_SET:
            symbol = FUNCTION_SYMBOLS[name]
            parents = [a, b][:symbol.arity]
            child = crossover(parents, symbol)
            assert len(child) == 30

            changed = a.genes.copy()
            changed[7] = 1.0 - changed[7]
            other = crossover([Genome(changed), b][:symbol.arity], symbol)
            diff = np.flatnonzero(other.genes != child.genes)
            assert set(diff) <= {7}

    def test_raw_crossover_is_unbounded(self):
        out = raw_crossover([np.array([2.0, 3.0]), np.array([3.0, 4.0])], FUNCTION_SYMBOLS['+'])
        np.testing.assert_array_equal(out, [5.0, 7.0])


class TestRandomGeneration:
    def test_insert_random_deterministic(self):
        first = insert_random(3, RandomSource(11))
        second = insert_random(3, RandomSource(11))
        np.testing.assert_array_equal(first.genes, second.genes)

    def test_insert_random_range_and_length(self):
        genome = insert_random(30, RandomSource(1))
        assert len(genome) == 30
        assert np.all((genome.genes >= 0) & (genome.genes <= 1))

    def test_insert_random_requires_genes(self):
        with pytest.raises(ValueError):
            insert_random(0, RandomSource(1))

    def test_invalid_seed(self):
        with pytest.raises(ValueError):
            RandomSource(-1)
        with pytest.raises(ValueError):
            RandomSource(2 ** 64)

    def test_spawn(self):
        assert RandomSource(42).spawn(3).seed == 45
        assert RandomSource(2 ** 64 - 1).spawn(1).seed == 0


class TestPickSymbol:
    def test_singleton(self):
        symbols = resolve_symbols(['+'])
        rng = RandomSource(0)
        assert all(pick_symbol(rng, symbols).name == '+' for _ in range(20))

    def test_uniform_frequencies(self):
        symbols = resolve_symbols(MOO_FUNCTION_SET)
        rng = RandomSource(2024)
        draws = 100_000
        counts = {s.name: 0 for s in symbols}
        for _ in range(draws):
            counts[pick_symbol(rng, symbols).name] += 1
        for name, count in counts.items():
            assert count / draws == pytest.approx(0.2, abs=0.01), name

    def test_deterministic(self):
        symbols = resolve_symbols(MOO_FUNCTION_SET)
        a, b = RandomSource(5), RandomSource(5)
        assert [pick_symbol(a, symbols).name for _ in range(50)] == \
               [pick_symbol(b, symbols).name for _ in range(50)]

    def test_empty_set(self):
        with pytest.raises(ValueError):
            pick_symbol(RandomSource(0), [])

    def test_resolve_unknown(self):
        with pytest.raises(KeyError):
            resolve_symbols(['+', 'log'])
