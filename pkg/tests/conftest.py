from functools import lru_cache

import pytest

from wedgesyz.golden import run_pipeline


@lru_cache(maxsize=None)
def pipeline(name):
    return run_pipeline(name)


@pytest.fixture
def run():
    return pipeline
