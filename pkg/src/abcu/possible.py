"""Possible-winner queries over incomplete profiles.

A committee W is a possible winner when some completion of the profile
makes it a (co-)winner; a candidate is a possible member when some
completion puts it inside some winning committee. Both questions range
over a completion space that is exponential in general, but for
particular rule/model pairs a single canonical completion decides the
question: per voter, pick the completion that maximizes W's score margin
against every rival simultaneously. The dispatchers below route to those
canonical constructions when the profile's structure allows it and fall
back to capped brute-force enumeration otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    BadKError,
    BadThresholdError,
    CapExceededError,
    ModelMismatchError,
    NoPolyAlgorithmError,
    UnknownCandidateError,
)
from .model import (
    DEFAULT_CAP,
    ApprovalBallot,
    ApprovalProfile,
    PartialBallot,
    PartialProfile,
    completions_of_ballot,
    count_completions,
    enumerate_completions,
    is_linearly_ordered,
    is_three_valued,
)
from .rules import (
    AV,
    Committee,
    ScoringFunction,
    ballot_score,
    binary_rule,
    check_committee_size,
    committees_by_mask,
    winning_committees,
)


@dataclass(frozen=True)
class Decision:
    """Outcome of a possible/necessary query.

    For a possible-query answered true, ``witness`` is a completion in
    which the queried object wins. For a necessary-query answered false,
    it is a counterexample completion. ``witness_committee`` names the
    committee that wins (or defeats) in the witness, when one applies.
    """

    answer: bool
    witness: ApprovalProfile | None
    witness_committee: Committee | None
    method_used: str


def _check_candidate(cid: int, m: int) -> None:
    if not 0 <= cid < m:
        raise UnknownCandidateError(f"candidate id {cid} out of range")


def _check_k(k: int, m: int) -> None:
    if not 1 <= k <= m:
        raise BadKError(f"k = {k} out of range for {m} candidates")


def _mask(committee: Committee) -> int:
    return sum(1 << c for c in committee)


def _committee_completion_av(ballot: PartialBallot, committee: Committee) -> ApprovalBallot:
    # Approving exactly the undecided committee members maximizes the
    # margin of W over every rival at once: each such candidate adds one
    # to W and at most one to any rival, each skipped outsider adds zero.
    return ApprovalBallot(frozenset(ballot.top | (ballot.middle & committee)))


def poscom_av_3va(profile: PartialProfile, committee: Committee) -> Decision:
    """Possible winner under the linear-weight rule, order-free middles."""
    if not is_three_valued(profile):
        raise ModelMismatchError("profile carries order constraints")
    check_committee_size(committee, len(committee), profile.m)
    canonical = ApprovalProfile(
        profile.registry,
        tuple(_committee_completion_av(b, committee) for b in profile.ballots),
    )
    if committee in winning_committees(AV, canonical, len(committee)):
        return Decision(True, canonical, committee, "av-3va-canonical")
    return Decision(False, None, None, "av-3va-canonical")


def _threshold_completion(
    ballot: PartialBallot, committee: Committee, t: int
) -> ApprovalBallot:
    """Cheapest completion pushing the overlap with W to the threshold.

    If the top already reaches t, or even the full middle cannot, the
    ballot approves no middle candidate at all. Otherwise it approves the
    shortest prefix of the ranking that closes the gap. Under a 0/1 step
    weight this choice maximizes the voter's margin for W against every
    rival committee simultaneously.
    """
    reach_top = len(ballot.top & committee)
    if reach_top >= t:
        return ApprovalBallot(ballot.top)
    if reach_top + len(ballot.middle & committee) < t:
        return ApprovalBallot(ballot.top)
    need = t - reach_top
    taken = []
    for c in ballot.middle_sequence():
        taken.append(c)
        if c in committee:
            need -= 1
            if need == 0:
                break
    return ApprovalBallot(frozenset(ballot.top | set(taken)))


def poscom_binary_linear(
    profile: PartialProfile, committee: Committee, t: int
) -> Decision:
    """Possible winner under a 0/1 threshold rule, totally ordered middles."""
    if not is_linearly_ordered(profile):
        raise ModelMismatchError("profile middles are not totally ordered")
    k = len(committee)
    check_committee_size(committee, k, profile.m)
    if t > k:
        raise BadThresholdError(f"threshold {t} exceeds committee size {k}")
    canonical = ApprovalProfile(
        profile.registry,
        tuple(_threshold_completion(b, committee, t) for b in profile.ballots),
    )
    if committee in winning_committees(binary_rule(t), canonical, k):
        return Decision(True, canonical, committee, "binary-linear-prefix")
    return Decision(False, None, None, "binary-linear-prefix")


def _score_tables(
    profile: PartialProfile, f: ScoringFunction, k: int
) -> tuple[list[Committee], list[list[ApprovalBallot]], list[list[list[int]]]]:
    """Per-voter, per-completion score rows over all size-k committees.

    Scores are exact rationals; multiplying every entry by their common
    denominator turns the comparisons the scan makes into integer ones
    without changing any outcome.
    """
    commits = list(committees_by_mask(profile.m, k))
    options = [completions_of_ballot(b) for b in profile.ballots]
    raw = [
        [[ballot_score(f, opt, c) for c in commits] for opt in opts]
        for opts in options
    ]
    denom = 1
    for rows in raw:
        for row in rows:
            for value in row:
                denom = math.lcm(denom, value.denominator)
    tables = [[[int(v * denom) for v in row] for row in rows] for rows in raw]
    return commits, options, tables


def poscom_brute(
    profile: PartialProfile,
    committee: Committee,
    f: ScoringFunction,
    k: int,
    cap: int = DEFAULT_CAP,
) -> Decision:
    """Possible winner by enumerating every completion, capped.

    Completions stream voter-major; the first one where W is a co-winner
    becomes the witness. The cap is checked before any enumeration work.
    """
    check_committee_size(committee, k, profile.m)
    total = count_completions(profile)
    if total > cap:
        raise CapExceededError(f"{total} completions exceed the cap of {cap}")
    commits, options, tables = _score_tables(profile, f, k)
    target = commits.index(committee)
    n = profile.n
    stack: list[int] = []

    def scan(v: int, sums: list[int]) -> tuple[int, ...] | None:
        if v == n:
            own = sums[target]
            if all(s <= own for s in sums):
                return tuple(stack)
            return None
        for ci, row in enumerate(tables[v]):
            stack.append(ci)
            hit = scan(v + 1, [a + b for a, b in zip(sums, row)])
            if hit is not None:
                return hit
            stack.pop()
        return None

    found = scan(0, [0] * len(commits))
    if found is None:
        return Decision(False, None, None, "brute-force")
    witness = ApprovalProfile(
        profile.registry, tuple(options[v][ci] for v, ci in enumerate(found))
    )
    return Decision(True, witness, committee, "brute-force")


def _poly_poscom_route(profile: PartialProfile, f: ScoringFunction) -> str | None:
    """Name of the canonical-completion route for this cell, if any."""
    if f.is_av and is_three_valued(profile):
        return "av-3va"
    if f.binary_threshold is not None and is_linearly_ordered(profile):
        return "binary-linear"
    return None


def _check_threshold(f: ScoringFunction, k: int) -> None:
    # Rejected at the dispatch boundary, not per route: a step rule whose
    # threshold exceeds k scores every committee 0, and answering such a
    # query on one route while erroring on another would break the
    # auto/brute agreement contract.
    t = f.binary_threshold
    if t is not None and t > k:
        raise BadThresholdError(f"threshold {t} exceeds committee size {k}")


def poscom(
    profile: PartialProfile,
    committee: Committee,
    f: ScoringFunction,
    k: int,
    method: str = "auto",
    cap: int = DEFAULT_CAP,
) -> Decision:
    """Possible-winner query with rule/model dispatch.

    method "auto" takes a canonical-completion route when the rule and
    the profile's structure admit one and falls back to capped
    enumeration; "poly" refuses the fallback; "brute" forces it.
    """
    if method not in ("auto", "poly", "brute"):
        raise ValueError(f"unknown method {method!r}")
    check_committee_size(committee, k, profile.m)
    _check_threshold(f, k)
    if method != "brute":
        route = _poly_poscom_route(profile, f)
        if route == "av-3va":
            return poscom_av_3va(profile, committee)
        if route == "binary-linear":
            return poscom_binary_linear(profile, committee, f.binary_threshold)
        if method == "poly":
            raise NoPolyAlgorithmError(
                f"no polynomial route for rule {f.label!r} on this profile"
            )
    return poscom_brute(profile, committee, f, k, cap)


def posmem_av_linear(profile: PartialProfile, candidate: int, k: int) -> Decision:
    """Possible member under the linear-weight rule, totally ordered middles.

    One canonical completion is best possible for the candidate: voters
    who can approve it do so as cheaply as possible (the prefix ending at
    the candidate), everyone else approves no middle candidate. The
    candidate can then join a winning committee exactly when at most k-1
    candidates score strictly higher there.
    """
    if not is_linearly_ordered(profile):
        raise ModelMismatchError("profile middles are not totally ordered")
    _check_candidate(candidate, profile.m)
    _check_k(k, profile.m)
    ballots = []
    for b in profile.ballots:
        if candidate in b.middle:
            sequence = b.middle_sequence()
            prefix = sequence[: sequence.index(candidate) + 1]
            ballots.append(ApprovalBallot(frozenset(b.top | set(prefix))))
        else:
            ballots.append(ApprovalBallot(b.top))
    canonical = ApprovalProfile(profile.registry, tuple(ballots))
    scores = [
        sum(1 for b in canonical.ballots if c in b.approved)
        for c in range(profile.m)
    ]
    better = [c for c in range(profile.m) if scores[c] > scores[candidate]]
    if len(better) > k - 1:
        return Decision(False, None, None, "av-linear-prefix")
    rest = sorted(
        (c for c in range(profile.m) if c != candidate and c not in better),
        key=lambda c: (-scores[c], c),
    )
    committee = frozenset({candidate, *better, *rest[: k - 1 - len(better)]})
    return Decision(True, canonical, committee, "av-linear-prefix")


def _committees_containing(m: int, k: int, candidate: int) -> list[Committee]:
    others = [c for c in range(m) if c != candidate]
    out = [
        frozenset({candidate, *(others[i] for i in rest)})
        for rest in committees_by_mask(len(others), k - 1)
    ]
    out.sort(key=_mask)
    return out


def posmem(
    profile: PartialProfile,
    candidate: int,
    f: ScoringFunction,
    k: int,
    method: str = "auto",
    cap: int = DEFAULT_CAP,
) -> Decision:
    """Possible-member query with rule/model dispatch.

    Routes: the direct prefix construction for the linear-weight rule on
    ordered middles; otherwise, when the possible-winner cell is
    polynomial, one possible-winner call per committee containing the
    candidate; otherwise capped enumeration.
    """
    if method not in ("auto", "poly", "brute"):
        raise ValueError(f"unknown method {method!r}")
    _check_candidate(candidate, profile.m)
    _check_k(k, profile.m)
    _check_threshold(f, k)
    if method != "brute":
        if f.is_av and is_linearly_ordered(profile):
            return posmem_av_linear(profile, candidate, k)
        if _poly_poscom_route(profile, f) is not None:
            for committee in _committees_containing(profile.m, k, candidate):
                inner = poscom(profile, committee, f, k, method="poly")
                if inner.answer:
                    return Decision(True, inner.witness, committee, "poscom-iteration")
            return Decision(False, None, None, "poscom-iteration")
        if method == "poly":
            raise NoPolyAlgorithmError(
                f"no polynomial route for rule {f.label!r} on this profile"
            )
    return _posmem_brute(profile, candidate, f, k, cap)


def _posmem_brute(
    profile: PartialProfile,
    candidate: int,
    f: ScoringFunction,
    k: int,
    cap: int,
) -> Decision:
    for completion in enumerate_completions(profile, cap):
        winners = winning_committees(f, completion, k)
        holding = sorted((w for w in winners if candidate in w), key=_mask)
        if holding:
            return Decision(True, completion, holding[0], "brute-force")
    return Decision(False, None, None, "brute-force")
