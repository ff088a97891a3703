"""Shared fixtures: three small profiles exercised all over the suite.

pair: two candidates, one decided voter and one undecided on b, k = 1.
trio: three candidates, one ordered middle b above c, k = 1.
quad: four candidates, four complete single-approval ballots, k = 2.
"""

import pytest

from abcu import CandidateRegistry, complete_profile, validate_partial_profile

A, B, C, D = 0, 1, 2, 3


@pytest.fixture
def pair_profile():
    registry = CandidateRegistry(("a", "b"))
    return validate_partial_profile(
        [
            ([A], [], [B]),
            ([], [B], [A]),
        ],
        registry,
    )


@pytest.fixture
def trio_profile():
    registry = CandidateRegistry(("a", "b", "c"))
    return validate_partial_profile(
        [
            ([A], [B, C], [], [(B, C)]),
            ([C], [], [A, B]),
        ],
        registry,
    )


@pytest.fixture
def quad_profile():
    registry = CandidateRegistry(("a", "b", "c", "d"))
    return complete_profile(registry, [{C}, {C}, {A}, {B}])
