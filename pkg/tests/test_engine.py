"""
Tests for configuration, selection and the evolutionary loops.
"""

import numpy as np
import pytest

from tgp_moo import engine
from tgp_moo.core import RandomSource, insert_random
from tgp_moo.dominance import nondominated_filter
from tgp_moo.engine import (AlgoConfig, binary_tournament, q_fitness, run_classic,
                            run_mo_archive, run_mo_plain, tournament)
from tgp_moo.problems import get_problem


@pytest.fixture
def small_config():
    return AlgoConfig(pop_size=20, generations=25, runs=1, metric_stride=10)


def initial_front(problem, cfg, seed):
    rng = RandomSource(seed)
    genomes = [insert_random(problem.m, rng) for _ in range(cfg.pop_size)]
    points = [problem.evaluate(problem.decode(g)) for g in genomes]
    return [p for p in points if not any(
        (q[0] <= p[0] and q[1] <= p[1]) and (q[0] < p[0] or q[1] < p[1]) for q in points)]


class TestAlgoConfig:
    def test_defaults_are_published_settings(self):
        cfg = AlgoConfig()
        assert (cfg.pop_size, cfg.generations, cfg.p_insert, cfg.tournament_size) == (100, 250, 0.05, 2)
        assert [s.name for s in cfg.symbols('archive')] == ['+', '-', '*', 'sin', 'exp']
        assert [s.name for s in cfg.symbols('classic')] == ['+', '-', '*', '/', 'sin']

    def test_from_yaml(self, repo_root):
        cfg = AlgoConfig.from_yaml(repo_root / 'config' / 'table1.yaml')
        assert cfg.archive_capacity == 100
        assert cfg.function_set == ('+', '-', '*', 'sin', 'exp')
        cfg.validate('archive')

    def test_unknown_key(self, tmp_path):
        path = tmp_path / 'bad.yaml'
        path.write_text('pop_size: 10\npopulation: 5\n')
        with pytest.raises(ValueError, match='population'):
            AlgoConfig.from_yaml(path)

    def test_replace_skips_none(self):
        cfg = AlgoConfig().replace(pop_size=10, generations=None)
        assert cfg.pop_size == 10
        assert cfg.generations == 250

    @pytest.mark.parametrize('overrides', [
        {'pop_size': 1},
        {'generations': -1},
        {'p_insert': 1.5},
        {'tournament_size': 0},
        {'runs': 0},
        {'metric_stride': 0},
        {'reference_points': 1},
        {'function_set': ('+', '/')},
        {'constant_range': (1.0, 0.0)},
    ])
    def test_invalid(self, overrides):
        with pytest.raises(ValueError):
            AlgoConfig(archive_capacity=10, **overrides).validate('archive')

    def test_archive_needs_capacity(self):
        with pytest.raises(ValueError):
            AlgoConfig().validate('archive')
        AlgoConfig().validate('plain')

    def test_unknown_symbol(self):
        with pytest.raises(KeyError):
            AlgoConfig(function_set=('+', 'tan')).validate('plain')


class TestTournament:
    def test_dominating_candidate_wins(self, make_individuals):
        pop = make_individuals([(0.1, 0.1), (0.5, 0.5)])
        rng = RandomSource(1)
        draws = 4000
        wins = sum(binary_tournament(pop, rng).id == 0 for _ in range(draws))
        # loses only when both draws hit the dominated member
        assert wins / draws == pytest.approx(0.75, abs=0.03)

    def test_incomparable_coin_flip(self, make_individuals):
        pop = make_individuals([(0.1, 0.9), (0.9, 0.1)])
        rng = RandomSource(2)
        draws = 10_000
        wins = sum(binary_tournament(pop, rng).id == 0 for _ in range(draws))
        assert wins / draws == pytest.approx(0.5, abs=0.02)

    def test_singleton(self, make_individuals):
        pop = make_individuals([(0.3, 0.3)])
        rng = RandomSource(3)
        assert all(binary_tournament(pop, rng) is pop[0] for _ in range(10))

    def test_empty(self):
        with pytest.raises(ValueError):
            tournament([], RandomSource(0))

    def test_larger_tournament_prefers_dominant(self, make_individuals):
        pop = make_individuals([(0.1, 0.1), (0.5, 0.5), (0.6, 0.6), (0.7, 0.7)])
        rng = RandomSource(4)
        draws = 4000
        wins = sum(tournament(pop, rng, 4).id == 0 for _ in range(draws))
        assert wins / draws == pytest.approx(1 - 0.75 ** 4, abs=0.03)


class TestPlainVariant:
    def test_generation_zero_front(self):
        problem = get_problem('zdt1')
        cfg = AlgoConfig(pop_size=30, generations=0)
        record = run_mo_plain(problem, cfg, RandomSource(17))
        assert [m.objectives for m in record.front] == initial_front(problem, cfg, 17)
        assert [s.generation for s in record.samples] == [0]
        assert record.evaluations == 30

    def test_sampling_schedule(self, small_config):
        record = run_mo_plain(get_problem('zdt2'), small_config, RandomSource(0))
        assert [s.generation for s in record.samples] == [0, 10, 20, 25]

    def test_deterministic(self, small_config):
        first = run_mo_plain(get_problem('zdt3'), small_config, RandomSource(5))
        second = run_mo_plain(get_problem('zdt3'), small_config, RandomSource(5))
        assert first.samples == second.samples
        assert len(first.front) == len(second.front)
        for a, b in zip(first.front, second.front):
            np.testing.assert_array_equal(a.genome.genes, b.genome.genes)
            assert a.objectives == b.objectives

    def test_all_insertion(self):
        cfg = AlgoConfig(pop_size=20, generations=10, p_insert=1.0)
        record = run_mo_plain(get_problem('zdt1'), cfg, RandomSource(9))
        assert nondominated_filter(record.front) == record.front
        assert all(np.all((m.genome.genes >= 0) & (m.genome.genes <= 1)) for m in record.front)

    def test_evaluations_fill_population(self, small_config):
        record = run_mo_plain(get_problem('zdt1'), small_config, RandomSource(1))
        # offspring only fill the slots left by elites
        assert small_config.pop_size < record.evaluations <= small_config.pop_size * 26

    def test_elitist_fronts_never_regress(self, monkeypatch):
        fronts = []
        original = engine.nondominated_filter

        def recording(pop):
            kept = original(pop)
            fronts.append([m.objectives for m in kept])
            return kept

        monkeypatch.setattr(engine, 'nondominated_filter', recording)
        cfg = AlgoConfig(pop_size=30, generations=15)
        run_mo_plain(get_problem('zdt1'), cfg, RandomSource(21))

        for earlier, later in zip(fronts, fronts[1:]):
            if len(earlier) > cfg.pop_size - 1:
                continue
            for p in earlier:
                assert any(q[0] <= p[0] and q[1] <= p[1] for q in later)

    def test_overflowing_elites_are_pruned(self):
        cfg = AlgoConfig(pop_size=4, generations=30, p_insert=0.5)
        record = run_mo_plain(get_problem('zdt1'), cfg, RandomSource(3))
        assert 1 <= len(record.front) <= 4

    def test_zdt4_decodes_wide_tail(self, small_config):
        record = run_mo_plain(get_problem('zdt4'), small_config, RandomSource(2))
        assert all(np.isfinite(m.objectives).all() for m in record.front)


class TestArchiveVariant:
    def test_generation_zero_archive(self):
        problem = get_problem('zdt1')
        cfg = AlgoConfig(pop_size=30, generations=0, archive_capacity=30)
        record = run_mo_archive(problem, cfg, RandomSource(17))
        assert [m.objectives for m in record.front] == initial_front(problem, cfg, 17)

    def test_evaluation_count(self):
        cfg = AlgoConfig(pop_size=20, generations=12, archive_capacity=10)
        record = run_mo_archive(get_problem('zdt2'), cfg, RandomSource(4))
        assert record.evaluations == 20 * 13

    def test_archive_bounded_and_nondominated(self):
        cfg = AlgoConfig(pop_size=30, generations=20, archive_capacity=10)
        record = run_mo_archive(get_problem('zdt1'), cfg, RandomSource(8))
        assert 1 <= len(record.front) <= 10
        assert nondominated_filter(record.front) == record.front

    def test_requires_capacity(self):
        with pytest.raises(ValueError):
            run_mo_archive(get_problem('zdt1'), AlgoConfig(), RandomSource(0))

    def test_deterministic(self):
        cfg = AlgoConfig(pop_size=20, generations=15, archive_capacity=20)
        first = run_mo_archive(get_problem('zdt6'), cfg, RandomSource(99))
        second = run_mo_archive(get_problem('zdt6'), cfg, RandomSource(99))
        assert first.samples == second.samples
        assert [m.objectives for m in first.front] == [m.objectives for m in second.front]

    def test_improves_on_zdt1(self):
        cfg = AlgoConfig(pop_size=50, generations=50, archive_capacity=50)
        record = run_mo_archive(get_problem('zdt1'), cfg, RandomSource(0))
        assert record.final.cm < record.samples[0].cm


class TestClassicVariant:
    def test_q_fitness(self):
        assert q_fitness(np.array([1.0, 2.0]), np.array([1.5, 1.0])) == 1.5
        assert q_fitness(np.array([np.inf]), np.array([0.0])) == float('inf')

    def test_target_is_an_input(self):
        x = np.linspace(0.0, 1.0, 8)
        cfg = AlgoConfig(pop_size=10, generations=3)
        result = run_classic(np.column_stack([x, x]), cfg, RandomSource(0))
        assert result.q_history[0] == 0.0
        assert result.q == 0.0

    def test_sum_of_two_inputs(self):
        cfg = AlgoConfig(pop_size=50, generations=30, function_set=('+',))
        result = run_classic(np.array([[2.0, 3.0, 5.0]]), cfg, RandomSource(6))
        assert result.q == 0.0
        np.testing.assert_array_equal(result.best_outputs, [5.0])

    def test_history_is_elitist(self):
        rng = np.random.default_rng(0)
        cases = rng.random((10, 3))
        cases[:, 2] = cases[:, 0] * cases[:, 1] + np.sin(cases[:, 0])
        cfg = AlgoConfig(pop_size=30, generations=20)
        result = run_classic(cases, cfg, RandomSource(1))
        assert len(result.q_history) == 21
        assert all(b <= a for a, b in zip(result.q_history, result.q_history[1:]))
        assert result.evaluations == 30 + 20 * 29

    def test_division_by_zero_is_protected(self):
        cases = np.array([[0.0, 1.0, 2.0], [0.0, 0.0, 3.0]])
        cfg = AlgoConfig(pop_size=20, generations=10, function_set=('/',))
        result = run_classic(cases, cfg, RandomSource(3))
        assert np.isfinite(result.q)

    def test_insertion_brings_back_terminals(self):
        class CountingSource(RandomSource):
            vectors = 0

            def uniform(self, size):
                CountingSource.vectors += 1
                return super().uniform(size)

        cases = np.array([[1.0, 2.0, 7.0], [3.0, 4.0, 9.0]])
        cfg = AlgoConfig(pop_size=6, generations=15, p_insert=1.0)
        result = run_classic(cases, cfg, CountingSource(4))
        # only the three constant chromosomes of the initial population draw vectors
        assert CountingSource.vectors == 3
        assert result.q == pytest.approx(min(np.abs(cases[:, 2] - cases[:, k]).sum() for k in (0, 1)))

    def test_bad_cases(self):
        with pytest.raises(ValueError):
            run_classic(np.empty((0, 3)), AlgoConfig(), RandomSource(0))
        with pytest.raises(ValueError):
            run_classic(np.ones((4, 1)), AlgoConfig(), RandomSource(0))


@pytest.mark.slow
class TestPublishedBehaviour:
    """Full-size batches; run with ``pytest -m slow``."""

    @staticmethod
    def batch(name, variant, runs=30):
        cfg = AlgoConfig(archive_capacity=100)
        runner = run_mo_archive if variant == 'archive' else run_mo_plain
        return [runner(get_problem(name), cfg, RandomSource(i)) for i in range(runs)]

    @staticmethod
    def mean_cm(records, generation):
        return float(np.mean([s.cm for r in records for s in r.samples if s.generation == generation]))

    @pytest.mark.parametrize('name', ['zdt1', 'zdt2', 'zdt3'])
    def test_archive_converges(self, name):
        records = self.batch(name, 'archive')
        assert np.mean([r.final.cm for r in records]) <= 0.02
        assert np.mean([r.final.dm for r in records]) >= 0.30
        assert self.mean_cm(records, 100) <= 2 * self.mean_cm(records, 250)

    def test_archive_zdt4(self):
        records = self.batch('zdt4', 'archive')
        assert np.mean([r.final.cm for r in records]) <= 1.0

    def test_zdt6_keeps_improving(self):
        records = self.batch('zdt6', 'archive')
        assert self.mean_cm(records, 250) < self.mean_cm(records, 100)

    @pytest.mark.parametrize('name', ['zdt1', 'zdt2', 'zdt3', 'zdt4', 'zdt6'])
    def test_plain_run_is_fast(self, name):
        record = self.batch(name, 'plain', runs=1)[0]
        assert record.seconds < 2.0

    def test_classic_regression(self, repo_root):
        cases = np.loadtxt(repo_root / 'data' / 'regression_cases.csv', delimiter=',', skiprows=1)
        cfg = AlgoConfig.from_yaml(repo_root / 'config' / 'classic.yaml')
        solved = sum(run_classic(cases, cfg, RandomSource(i)).q < 0.01 for i in range(30))
        assert solved >= 25
