from functools import lru_cache

import pytest

from partition_ap.circle import theorem_1_2_eval


@lru_cache(maxsize=None)
def cached_breakdown(R: int, r: int, n: int):
    return theorem_1_2_eval(R, r, n)


@pytest.fixture(scope="session")
def breakdown():
    """Memoized five-series evaluation shared by every test module."""
    return cached_breakdown
