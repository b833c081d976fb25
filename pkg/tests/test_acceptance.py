"""One test per acceptance criterion, at the stated sample sizes and tolerances.

Each test prints its pass/fail line (visible with ``pytest -s`` or in the
captured output of a failure).
"""

import pytest

from flatmink.acceptance import CRITERIA

SEED = 42


def _check(n):
    res = CRITERIA[n](SEED)
    print(res.line())
    assert res.passed, res.to_dict()


def test_criterion_1_catalog_validation():
    _check(1)


def test_criterion_2_joining_existence():
    _check(2)


@pytest.mark.slow
def test_criterion_3_joining_uniqueness():
    _check(3)


def test_criterion_4_touching():
    _check(4)


def test_criterion_5_classical_oracle_equivalence():
    _check(5)


@pytest.mark.slow
def test_criterion_6_root_structure_case_table():
    _check(6)


def test_criterion_7_classification():
    _check(7)


def test_criterion_8_isomorphism():
    _check(8)


def test_criterion_9_equivariance():
    _check(9)
