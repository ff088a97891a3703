"""Justified-representation audits, complete and incomplete profiles.

A group of voters deserves representation when it is large (at least
l * n / k voters) and cohesive (jointly approves at least l candidates).
The axioms differ in what counts as being served: justified
representation (l = 1) wants someone in the group to approve a committee
member; its proportional strengthening bounds how many committee members
the whole group touches; the extended form wants some group member to
approve at least l committee members.

The checks below scan candidate subsets rather than voter subsets. That
is an exact reformulation, not a heuristic: a violating group may sit
strictly inside the set of all voters approving its common candidates
(adding one well-served voter to a violating group hides the violation),
so the scans quantify over the served-side slack explicitly, the
proportional one over the committee members the group may touch and the
extended one over the per-voter satisfaction bound. The definition-level
scan over all voter groups is kept alongside as the adjudicating oracle
for small electorates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BadEditError, TooManyVotersError, UnknownCandidateError
from .model import (
    DEFAULT_CAP,
    ApprovalBallot,
    ApprovalProfile,
    PartialProfile,
    enumerate_completions,
)
from .possible import Decision, _check_candidate
from .rules import Committee, check_committee_size


@dataclass(frozen=True)
class GroupWitness:
    """A voter group violating a representation axiom.

    ``common`` is a set of ``level`` candidates the whole group approves;
    ``allowed`` (proportional checks only) is the small committee part
    the group's ballots are confined to.
    """

    voters: frozenset[int]
    common: frozenset[int]
    level: int
    allowed: frozenset[int] | None = None


def _ballot_masks(profile: ApprovalProfile) -> list[int]:
    return [sum(1 << c for c in b.approved) for b in profile.ballots]


def check_jr(
    profile: ApprovalProfile, committee: Committee, k: int
) -> tuple[bool, GroupWitness | None]:
    """Justified representation: no large unrepresented cohesive group.

    Violations are scanned per candidate in ascending id order; the
    witness collects every unrepresented voter approving that candidate.
    """
    check_committee_size(committee, k, profile.m)
    n = profile.n
    if n == 0:
        return True, None
    for cid in range(profile.m):
        group = [
            v
            for v, b in enumerate(profile.ballots)
            if cid in b.approved and not (b.approved & committee)
        ]
        if group and k * len(group) >= n:
            return False, GroupWitness(
                frozenset(group), frozenset({cid}), 1, None
            )
    return True, None


def _pjr_violation(
    profile: ApprovalProfile, committee: Committee, k: int, levels
) -> GroupWitness | None:
    n = profile.n
    if n == 0:
        return None
    masks = _ballot_masks(profile)
    wmask = sum(1 << c for c in committee)
    members = sorted(committee)
    for level in levels:
        for shared in combinations(range(profile.m), level):
            smask = sum(1 << c for c in shared)
            for x_size in range(level):
                for allowed in combinations(members, x_size):
                    amask = sum(1 << c for c in allowed)
                    group = [
                        v
                        for v in range(n)
                        if masks[v] & smask == smask
                        and masks[v] & wmask & ~amask == 0
                    ]
                    if group and k * len(group) >= level * n:
                        return GroupWitness(
                            frozenset(group),
                            frozenset(shared),
                            level,
                            frozenset(allowed),
                        )
    return None


def check_pjr(
    profile: ApprovalProfile, committee: Committee, k: int
) -> tuple[bool, GroupWitness | None]:
    """Proportional justified representation, by exhaustive subset scan.

    For every level l, candidate l-set S and committee part X smaller
    than l, the voters approving all of S whose committee approvals stay
    inside X must number under l * n / k.
    """
    check_committee_size(committee, k, profile.m)
    witness = _pjr_violation(profile, committee, k, range(1, k + 1))
    return (witness is None), witness


def _ejr_violation(
    profile: ApprovalProfile, committee: Committee, k: int, levels
) -> GroupWitness | None:
    n = profile.n
    if n == 0:
        return None
    masks = _ballot_masks(profile)
    wmask = sum(1 << c for c in committee)
    overlap = [bin(mask & wmask).count("1") for mask in masks]
    for level in levels:
        short = [v for v in range(n) if overlap[v] < level]
        for shared in combinations(range(profile.m), level):
            smask = sum(1 << c for c in shared)
            group = [v for v in short if masks[v] & smask == smask]
            if group and k * len(group) >= level * n:
                return GroupWitness(
                    frozenset(group), frozenset(shared), level, None
                )
    return None


def check_ejr(
    profile: ApprovalProfile, committee: Committee, k: int
) -> tuple[bool, GroupWitness | None]:
    """Extended justified representation, by exhaustive subset scan.

    For every level l and candidate l-set S, the voters approving all of
    S while approving under l committee members must number under
    l * n / k.
    """
    check_committee_size(committee, k, profile.m)
    witness = _ejr_violation(profile, committee, k, range(1, k + 1))
    return (witness is None), witness


_AXIOM_CHECKS = {"jr": check_jr, "pjr": check_pjr, "ejr": check_ejr}


def check_axiom(
    profile: ApprovalProfile, committee: Committee, k: int, axiom: str
) -> tuple[bool, GroupWitness | None]:
    try:
        return _AXIOM_CHECKS[axiom](profile, committee, k)
    except KeyError:
        raise ValueError(f"unknown axiom {axiom!r}") from None


def check_axiom_brute(
    profile: ApprovalProfile, committee: Committee, k: int, axiom: str
) -> tuple[bool, GroupWitness | None]:
    """Definition-level scan over every voter group; small n only.

    Groups are bitmask-ascending; per group the jointly approved set,
    the union of approvals and the best committee overlap are built
    incrementally from the group without its lowest voter.
    """
    if axiom not in _AXIOM_CHECKS:
        raise ValueError(f"unknown axiom {axiom!r}")
    check_committee_size(committee, k, profile.m)
    n = profile.n
    if n > 15:
        raise TooManyVotersError(f"group scan limited to 15 voters, got {n}")
    if n == 0:
        return True, None
    masks = _ballot_masks(profile)
    wmask = sum(1 << c for c in committee)
    full = (1 << profile.m) - 1
    size = 1 << n
    common = [full] * size
    union = [0] * size
    best_overlap = [0] * size
    lowbit_index = {1 << v: v for v in range(n)}
    for g in range(1, size):
        low = g & -g
        rest = g ^ low
        v = lowbit_index[low]
        common[g] = common[rest] & masks[v]
        union[g] = union[rest] | masks[v]
        own = bin(masks[v] & wmask).count("1")
        best_overlap[g] = max(best_overlap[rest], own) if rest else own
    for level in range(1, k + 1):
        for g in range(1, size):
            voters = bin(g).count("1")
            if k * voters < level * n:
                continue
            if bin(common[g]).count("1") < level:
                continue
            if axiom == "jr":
                failed = union[g] & wmask == 0
            elif axiom == "pjr":
                failed = bin(union[g] & wmask).count("1") < level
            else:
                failed = best_overlap[g] < level
            if failed:
                shared = [c for c in range(profile.m) if common[g] >> c & 1]
                allowed = None
                if axiom == "pjr":
                    allowed = frozenset(
                        c for c in range(profile.m) if (union[g] & wmask) >> c & 1
                    )
                return False, GroupWitness(
                    frozenset(v for v in range(n) if g >> v & 1),
                    frozenset(shared[:level]),
                    level,
                    allowed,
                )
        if axiom == "jr":
            break
    return True, None


def _jr_optimistic_ballot(b, committee: Committee) -> ApprovalBallot:
    if b.middle & committee:
        return ApprovalBallot(frozenset(b.top | b.middle))
    return ApprovalBallot(b.top)


def posjr(profile: PartialProfile, committee: Committee, k: int) -> Decision:
    """Whether some completion satisfies justified representation.

    One completion is friendliest: a voter whose middle touches the
    committee approves the whole middle (becoming represented no matter
    what else is approved), everyone else approves no middle candidate
    (staying out of any would-be cohesive group). The axiom holds in some
    completion exactly when it holds in this one.
    """
    check_committee_size(committee, k, profile.m)
    canonical = ApprovalProfile(
        profile.registry,
        tuple(_jr_optimistic_ballot(b, committee) for b in profile.ballots),
    )
    satisfied, _ = check_jr(canonical, committee, k)
    if satisfied:
        return Decision(True, canonical, committee, "canonical-completion")
    return Decision(False, None, None, "canonical-completion")


def necjr(profile: PartialProfile, committee: Committee, k: int) -> Decision:
    """Whether every completion satisfies justified representation.

    One completion is most adversarial: every voter approves the largest
    upward-closed middle part that avoids the committee entirely, keeping
    the voter unrepresented (when the top allows) with a ballot as wide
    as possible. The axiom holds in every completion exactly when it
    holds in this one.
    """
    check_committee_size(committee, k, profile.m)
    ballots = []
    for b in profile.ballots:
        avoiding = frozenset(
            c for c in b.middle if not (b.forced_by(c) & committee)
        )
        ballots.append(ApprovalBallot(frozenset(b.top | avoiding)))
    adversarial = ApprovalProfile(profile.registry, tuple(ballots))
    satisfied, _ = check_jr(adversarial, committee, k)
    if satisfied:
        return Decision(True, None, None, "canonical-completion")
    return Decision(False, adversarial, committee, "canonical-completion")


def jr_modification_check(
    profile: ApprovalProfile, committee: Committee, k: int, edit: tuple
) -> bool:
    """Apply a representation-safe ballot edit and re-check the axiom.

    Two edit shapes are accepted: ("remove", voter, candidate) drops one
    non-committee candidate from one ballot (a no-op when the voter never
    approved it), and ("replace", voter, ballot) swaps in a new approval
    set containing at least one committee member. Anything else raises.
    Callers use this as a harness for edits that provably preserve the
    axiom, so the expected return is True.
    """
    check_committee_size(committee, k, profile.m)
    if not isinstance(edit, tuple) or len(edit) != 3:
        raise BadEditError("edit must be a (kind, voter, payload) triple")
    kind, voter, payload = edit
    if not isinstance(voter, int) or not 0 <= voter < profile.n:
        raise BadEditError(f"voter index {voter!r} out of range")
    ballots = list(profile.ballots)
    if kind == "remove":
        if not isinstance(payload, int):
            raise BadEditError("remove edit needs a candidate id")
        _check_candidate(payload, profile.m)
        if payload in committee:
            raise BadEditError("cannot remove a committee member's approval")
        ballots[voter] = ApprovalBallot(ballots[voter].approved - {payload})
    elif kind == "replace":
        try:
            new_ballot = frozenset(payload)
        except TypeError:
            raise BadEditError("replace edit needs a candidate id set") from None
        for cid in new_ballot:
            if not isinstance(cid, int) or not 0 <= cid < profile.m:
                raise UnknownCandidateError(f"candidate id {cid!r} out of range")
        if not new_ballot & committee:
            raise BadEditError("replacement ballot must contain a committee member")
        ballots[voter] = ApprovalBallot(new_ballot)
    else:
        raise BadEditError(f"unknown edit kind {kind!r}")
    edited = ApprovalProfile(profile.registry, tuple(ballots))
    satisfied, _ = check_jr(edited, committee, k)
    return satisfied


def possible_axiom_by_scan(
    profile: PartialProfile,
    committee: Committee,
    k: int,
    axiom: str,
    cap: int = DEFAULT_CAP,
) -> Decision:
    """Exists-a-completion axiom check by capped enumeration."""
    check_committee_size(committee, k, profile.m)
    check = _AXIOM_CHECKS[axiom] if axiom in _AXIOM_CHECKS else None
    if check is None:
        raise ValueError(f"unknown axiom {axiom!r}")
    for completion in enumerate_completions(profile, cap):
        satisfied, _ = check(completion, committee, k)
        if satisfied:
            return Decision(True, completion, committee, "experimental-completion-scan")
    return Decision(False, None, None, "experimental-completion-scan")


def necessary_axiom_by_scan(
    profile: PartialProfile,
    committee: Committee,
    k: int,
    axiom: str,
    cap: int = DEFAULT_CAP,
) -> Decision:
    """For-all-completions axiom check by capped enumeration."""
    check_committee_size(committee, k, profile.m)
    check = _AXIOM_CHECKS[axiom] if axiom in _AXIOM_CHECKS else None
    if check is None:
        raise ValueError(f"unknown axiom {axiom!r}")
    for completion in enumerate_completions(profile, cap):
        satisfied, _ = check(completion, committee, k)
        if not satisfied:
            return Decision(False, completion, committee, "experimental-completion-scan")
    return Decision(True, None, None, "experimental-completion-scan")
