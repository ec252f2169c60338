"""Full-length run on the 41-code database of self-dual [36,18,8] codes"""

import os

import pytest

from src.codes.linear_code import is_self_dual
from src.data.code_db import parse_db
from src.pipeline.frame import PAIRS
from src.pipeline.runner import PUBLISHED_CASES, PUBLISHED_COUNTS, REFERENCE_N, PipelineRunner, published_mismatches, same_classes
from src.pipeline.verdict import Verdict


@pytest.fixture(scope="module")
def length72_result():
    db = parse_db(os.environ["FIXGLUE_REFERENCE_DB"])
    runner = PipelineRunner(REFERENCE_N, 16, 8, threads=os.cpu_count())
    return runner.run(db, other_pairs=[p for p in PAIRS if p != "alpha,beta"])


@pytest.mark.slow
def test_database_size(length72_result):
    assert length72_result.database_size == 41


@pytest.mark.slow
def test_database_codes():
    codes = parse_db(os.environ["FIXGLUE_REFERENCE_DB"])
    assert all(is_self_dual(c) and c.n == 36 for c in codes)


@pytest.mark.slow
def test_published_counts(length72_result):
    assert len(length72_result.library) == PUBLISHED_COUNTS["library"]
    assert len(length72_result.reps) == PUBLISHED_COUNTS["representatives"]
    assert length72_result.partition.m == PUBLISHED_COUNTS["buckets"]
    assert len(length72_result.survivors) == PUBLISHED_COUNTS["survivors"]


@pytest.mark.slow
def test_survivor_parameters(length72_result):
    for s in length72_result.survivors:
        assert (s.code.n, s.code.k, s.min_distance, s.pair_dim) == (72, 26, 16, 10)


@pytest.mark.slow
def test_cases_table(length72_result):
    assert set(length72_result.table.rows) == PUBLISHED_CASES


@pytest.mark.slow
def test_pairs_agree(length72_result):
    for found in length72_result.other_pairs.values():
        assert same_classes(length72_result.survivors, found)


@pytest.mark.slow
def test_contradiction(length72_result):
    assert length72_result.outcome.verdict == Verdict.CONTRADICTION
    assert published_mismatches(length72_result) == []
