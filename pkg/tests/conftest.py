"""Pytest configuration and fixtures."""
import os
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from rwfit.distribution import Sample
from rwfit.io import expand_grouped, read_grouped_csv

DATA_DIR = Path(__file__).parent.parent / "data"

# Bearing fatigue lifetimes, negated so the upper tail is bounded
BEARING_VALUES = [-152.7, -172.0, -172.5, -173.3, -193.0, -204.7, -216.5, -234.9, -262.6, -422.6]


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def bearing_sample() -> Sample:
    return Sample.of(BEARING_VALUES, source="bearing")


@pytest.fixture
def insurance_sample() -> Sample:
    """Grouped insurance-holder ages expanded to class midpoints."""
    return expand_grouped(read_grouped_csv(DATA_DIR / "insurance_ages.csv"))


@pytest.fixture(autouse=True)
def _no_seed_override(monkeypatch):
    """Keep a developer's RWFIT_SEED out of the tests."""
    monkeypatch.delenv("RWFIT_SEED", raising=False)
