"""
Shared fixtures for the test suite.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT))

from tgp_moo.core import Genome  # noqa: E402
from tgp_moo.dominance import EvaluatedIndividual  # noqa: E402
from tgp_moo.problems import ObjectivePoint  # noqa: E402


@pytest.fixture
def repo_root():
    return ROOT


@pytest.fixture
def make_individuals():
    """Build evaluated individuals from objective pairs; ids follow list order."""
    def build(points, start_id=0):
        return [
            EvaluatedIndividual(Genome(np.array([0.5])), ObjectivePoint(float(f1), float(f2)), start_id + i)
            for i, (f1, f2) in enumerate(points)
        ]
    return build
