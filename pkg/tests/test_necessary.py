"""Largest score differences and necessary-winner queries."""

from fractions import Fraction
from random import Random

import pytest

from abcu import (
    AV,
    BadKError,
    CandidateRegistry,
    CC,
    NoPolyAlgorithmError,
    PAV,
    SAV,
    binary_rule,
    is_completion,
    make_partial_ballot,
    max_diff_ballot,
    max_diff_profile,
    neccom,
    necmem,
    necmem_av_3va,
    profile_score,
    validate_partial_profile,
)
from conftest import A, B, C
from oracles import SCORERS, decide_all, max_diff, sav_score
from profilegen import random_committee, random_partial_profile
from test_possible import RULES

R3 = CandidateRegistry(("a", "b", "c"))
R4 = CandidateRegistry(("a", "b", "c", "d"))


def rows(profile):
    return [b.approved for b in profile.ballots]


def test_single_voter_extremes(pair_profile):
    undecided = pair_profile.ballots[1]
    diff, witness = max_diff_ballot(AV, undecided, frozenset({A}), frozenset({B}))
    assert diff == 1 and witness.approved == {B}
    fixed = pair_profile.ballots[0]
    diff, witness = max_diff_ballot(AV, fixed, frozenset({A}), frozenset({B}))
    assert diff == -1 and witness.approved == {A}


def test_profile_maximum_decomposes(pair_profile):
    report = max_diff_profile(AV, pair_profile, frozenset({A}), frozenset({B}))
    assert report.per_voter == (Fraction(-1), Fraction(1))
    assert report.total == 0
    assert sum(report.per_voter) == report.total
    assert rows(report.witness) == [frozenset({A}), frozenset({B})]


def test_size_mismatch_is_rejected(pair_profile):
    with pytest.raises(BadKError):
        max_diff_profile(AV, pair_profile, frozenset({A}), frozenset({A, B}))


def test_order_constraints_restrict_the_maximum():
    # b can only be approved together with a, so b never gains on {a}
    ballot = make_partial_ballot([], [A, B], [C], R3, [(A, B)])
    diff, _ = max_diff_ballot(AV, ballot, frozenset({A}), frozenset({B}))
    assert diff == 0


def test_ballot_size_sensitive_rules_scan_prefix_lengths():
    # a fixed approval of the committee is best diluted by the whole
    # free middle: 0 - 1/3 beats the shorter ballots' -1 and -1/2
    ballot = make_partial_ballot([B], [C, 3], [A], R4)
    diff, witness = max_diff_ballot(SAV, ballot, frozenset({B}), frozenset({A}))
    assert diff == Fraction(-1, 3)
    assert witness.approved == {B, C, 3}


def test_overlap_only_rules_ignore_prefix_padding():
    ballot = make_partial_ballot([B], [C, 3], [A], R4)
    diff, witness = max_diff_ballot(AV, ballot, frozenset({B}), frozenset({A}))
    assert diff == -1
    assert witness.approved == {B}


def test_necessary_winner_on_the_pair(pair_profile):
    sure = neccom(AV, pair_profile, frozenset({A}), 1)
    assert sure.answer and sure.method_used == "max-score-difference"
    shaky = neccom(AV, pair_profile, frozenset({B}), 1)
    assert not shaky.answer
    assert shaky.witness_committee == frozenset({A})
    assert rows(shaky.witness) == [frozenset({A}), frozenset()]


def test_full_committee_is_always_necessary(trio_profile):
    decision = neccom(PAV, trio_profile, frozenset({A, B, C}), 3)
    assert decision.answer


def test_neccom_counterexamples_verify(pair_profile, trio_profile):
    for profile, f in ((pair_profile, AV), (trio_profile, PAV), (trio_profile, SAV)):
        for committee in ({A}, {B}):
            decision = neccom(f, profile, frozenset(committee), 1)
            if not decision.answer:
                assert is_completion(decision.witness, profile)
                assert profile_score(
                    f, decision.witness, decision.witness_committee
                ) > profile_score(f, decision.witness, frozenset(committee))


def test_necessary_members_on_the_pair(pair_profile):
    assert necmem(pair_profile, A, AV, 1).answer
    lost = necmem(pair_profile, B, AV, 1)
    assert not lost.answer
    assert rows(lost.witness) == [frozenset({A}), frozenset()]
    assert lost.witness_committee == frozenset({A})


def test_unordered_route_agrees_with_enumeration():
    wide = validate_partial_profile(
        [([], [A, B], [C]), ([C], [B], [A])], R3
    )
    for cid in (A, B, C):
        direct = necmem_av_3va(wide, cid, 1)
        brute = necmem(wide, cid, AV, 1, method="brute")
        assert direct.answer == brute.answer
        assert direct.method_used == "av-3va-defeat-scan"


def test_ordered_route_under_step_rules(trio_profile):
    decision = necmem(trio_profile, C, CC, 1)
    assert decision.answer
    assert decision.method_used == "binary-linear-defeat-scan"


def test_member_brute_route(trio_profile):
    keeps = necmem(trio_profile, C, SAV, 1)
    assert keeps.answer and keeps.method_used == "brute-force"
    drops = necmem(trio_profile, A, SAV, 1)
    assert not drops.answer
    assert rows(drops.witness) == [frozenset({A, B}), frozenset({C})]


def test_member_poly_refusal():
    wide = validate_partial_profile([([], [A, B], [C])], R3)
    with pytest.raises(NoPolyAlgorithmError, match="pav"):
        necmem(wide, A, PAV, 1, method="poly")


def test_random_maximum_agrees_with_enumeration():
    rng = Random(977)
    for trial in range(40):
        kind = ("3va", "linear", "poset")[trial % 3]
        name = list(SCORERS)[trial % len(SCORERS)]
        profile = random_partial_profile(
            rng, n=rng.randint(1, 3), m=rng.randint(2, 4), kind=kind, max_middle=2
        )
        k = rng.randint(1, min(2, profile.m))
        committee = random_committee(rng, profile.m, k)
        rival = random_committee(rng, profile.m, k)
        report = max_diff_profile(RULES[name], profile, committee, rival)
        assert report.total == max_diff(profile, SCORERS[name], committee, rival)
        assert is_completion(report.witness, profile)


def test_random_necessary_agreement_with_sweep_oracle():
    rng = Random(6310)
    for trial in range(60):
        kind = ("3va", "linear", "poset")[trial % 3]
        name = list(RULES)[trial % len(RULES)]
        least_m = 2 if name == "binary:2" else 1
        profile = random_partial_profile(
            rng, n=rng.randint(1, 3), m=rng.randint(least_m, 4), kind=kind,
            max_middle=2,
        )
        k = 2 if name == "binary:2" else rng.randint(1, min(2, profile.m))
        _pos, nec, _member_pos, member_nec = decide_all(
            profile, SCORERS[name], k
        )
        for committee, expected in nec.items():
            got = neccom(RULES[name], profile, committee, k)
            assert got.answer == expected, (trial, name, committee)
        for cid, expected in member_nec.items():
            got = necmem(profile, cid, RULES[name], k)
            assert got.answer == expected, (trial, name, cid)


def test_sav_prefix_lengths_affect_the_profile_maximum():
    # same contested picture, two free candidates; the assembled witness
    # must keep each voter's own best prefix length
    profile = validate_partial_profile(
        [([B], [C, 3], [A]), ([], [A], [B, C, 3])], R4
    )
    report = max_diff_profile(SAV, profile, frozenset({B}), frozenset({A}))
    assert report.per_voter == (Fraction(-1, 3), Fraction(1))
    assert report.total == max_diff(
        profile, sav_score, frozenset({B}), frozenset({A})
    )
