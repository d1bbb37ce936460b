"""
Tests for the table reproduction script.
"""

import json

import pytest

from scripts.reproduce_tables import reproduce
from tgp_moo.compare import BaselineComparator
from tgp_moo.engine import AlgoConfig
from tgp_moo.problems import PROBLEMS


class TestReproduce:
    @pytest.fixture
    def tiny_config(self):
        return AlgoConfig(pop_size=8, generations=2, runs=2, archive_capacity=8)

    def test_every_problem_and_variant(self, tiny_config, tmp_path):
        summaries = reproduce(tiny_config, tmp_path)
        assert len(summaries) == 2 * len(PROBLEMS)
        for path in summaries:
            data = json.loads(path.read_text())
            assert path.parent.name == f"{data['problem']}_{data['variant']}"

    def test_summaries_feed_comparison(self, tiny_config, tmp_path, repo_root):
        summaries = reproduce(tiny_config, tmp_path)
        comparator = BaselineComparator(repo_root / 'data' / 'baselines.json')
        table = comparator.build_table(summaries)
        assert len(table) == 6 * len(PROBLEMS)
        assert set(table['method']) == {'TGP', 'TGP with archive', 'TGP (published)',
                                        'TGP with archive (published)', 'SPEA', 'PAES'}
        measured = table[table['method'].isin(['TGP', 'TGP with archive'])]
        assert (measured['seconds'] >= 0).all()
        published = table[table['method'].str.endswith('(published)')]
        assert (published['seconds'] > 0).all()
