"""Shared fixtures."""

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from src.config import get_settings
from src.models import build_tree


settings.register_profile(
    "flca", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("flca")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def app_settings():
    """Settings with the defaults from the environment (cached)."""
    return get_settings()


@pytest.fixture
def path3():
    """Path 0 -> 1 -> 2."""
    return build_tree([None, 0, 1])


@pytest.fixture
def star6():
    """Root 0 with leaves 1..5."""
    return build_tree([None, 0, 0, 0, 0, 0])


@pytest.fixture
def binary_h3():
    """Full binary tree of height 3 in heap order; leaves are 7..14."""
    return build_tree([None] + [(v - 1) // 2 for v in range(1, 15)])


@pytest.fixture
def fork():
    """s=0 -> a=1, and a has children b=2, c=3."""
    return build_tree([None, 0, 1, 1])
