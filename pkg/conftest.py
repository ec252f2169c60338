"""Shared fixtures and brute-force oracles"""

import os
import random
from itertools import permutations
from typing import List

import pytest

from src.codes.catalog import e8, extended_golay, i2_power
from src.codes.linear_code import LinearCode, code_image
from src.groups.permutation import Permutation
from src.pipeline.frame import standard_frame


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-scale run, needs FIXGLUE_REFERENCE_DB")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("FIXGLUE_REFERENCE_DB"):
        return
    skip = pytest.mark.skip(reason="set FIXGLUE_REFERENCE_DB to the 41-code database to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def e8_code():
    return e8()


@pytest.fixture
def golay():
    return extended_golay()


@pytest.fixture
def i2_squared():
    return i2_power(2)


@pytest.fixture
def frame8():
    return standard_frame(8)


@pytest.fixture
def frame16():
    return standard_frame(16)


def all_permutations(n: int) -> List[Permutation]:
    return [Permutation(p) for p in permutations(range(n))]


def random_permutation(n: int, rng: random.Random) -> Permutation:
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(tuple(images))


def orbit_key(code: LinearCode, group_elements) -> tuple:
    """Smallest generator tuple over the orbit of ``code``"""
    return min(code_image(code, g).rows for g in group_elements)


def span_set(rows, ncols) -> set:
    """Every vector of the row space, by brute force"""
    out = {0}
    for r in rows:
        out |= {v ^ r for v in out}
    return out
