"""Ballot and profile model.

Complete approval ballots are plain candidate sets. Incomplete ballots
partition the candidate set into top (approved for sure), bottom
(disapproved for sure) and middle (undecided), with an optional strict
partial order on the middle: an order edge (x, y) means that any
completion approving y must also approve x. A completion therefore
approves all of top, none of bottom, and an upward-closed subset of the
middle.

Three structural classes of incomplete profile matter to the algorithm
dispatchers. A profile is three-valued when no ballot carries order
constraints (every middle subset completes), linear when every ballot's
middle is totally ordered (completions are exactly the prefixes of that
order, the empty prefix included), and a general poset otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceededError,
    CycleDetectedError,
    EdgeOutsideMiddleError,
    PartitionIncompleteError,
    PartitionOverlapError,
    ShapeMismatchError,
    UnknownCandidateError,
)

DEFAULT_CAP = 1 << 20


@dataclass(frozen=True)
class CandidateRegistry:
    """Immutable mapping between candidate names and dense integer ids."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError("candidate names must be distinct")

    def __len__(self) -> int:
        return len(self.names)

    def id_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownCandidateError(f"unknown candidate {name!r}") from None

    def name_of(self, cid: int) -> str:
        if not 0 <= cid < len(self.names):
            raise UnknownCandidateError(f"candidate id {cid} out of range")
        return self.names[cid]


@dataclass(frozen=True)
class ApprovalBallot:
    """A complete ballot: the set of approved candidate ids."""

    approved: frozenset[int]


@dataclass(frozen=True)
class ApprovalProfile:
    """Complete ballots for every voter, over a shared registry."""

    registry: CandidateRegistry
    ballots: tuple[ApprovalBallot, ...]

    @property
    def n(self) -> int:
        return len(self.ballots)

    @property
    def m(self) -> int:
        return len(self.registry)


@dataclass(frozen=True)
class PartialBallot:
    """An incomplete ballot over candidate ids.

    ``precedence`` is stored transitively closed; a pair (x, y) says x is
    ranked above y, so a completion containing y must contain x. Both
    endpoints always lie in ``middle``.
    """

    top: frozenset[int]
    middle: frozenset[int]
    bottom: frozenset[int]
    precedence: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def is_three_valued(self) -> bool:
        return not self.precedence

    def is_totally_ordered(self) -> bool:
        q = len(self.middle)
        return len(self.precedence) == q * (q - 1) // 2

    def middle_sequence(self) -> list[int]:
        """The middle in rank order, most preferred first.

        Only meaningful for totally ordered middles; each candidate's rank
        is the number of middle candidates below it.
        """
        below = {c: 0 for c in self.middle}
        for x, _y in self.precedence:
            below[x] += 1
        return sorted(self.middle, key=lambda c: (-below[c], c))

    def forced_by(self, cid: int) -> frozenset[int]:
        """Candidates every completion containing ``cid`` must contain."""
        return frozenset({cid} | {x for x, y in self.precedence if y == cid})


@dataclass(frozen=True)
class PartialProfile:
    """Incomplete ballots for every voter, over a shared registry."""

    registry: CandidateRegistry
    ballots: tuple[PartialBallot, ...]

    @property
    def n(self) -> int:
        return len(self.ballots)

    @property
    def m(self) -> int:
        return len(self.registry)


class ModelClass(Enum):
    THREE_VALUED = "3va"
    LINEAR = "linear"
    POSET = "poset"


def _transitive_closure(edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    succ: dict[int, set[int]] = {}
    for x, y in edges:
        succ.setdefault(x, set()).add(y)
    changed = True
    while changed:
        changed = False
        for x, outs in succ.items():
            extra = set().union(*(succ.get(y, ()) for y in outs)) - outs
            if extra:
                outs |= extra
                changed = True
    return {(x, y) for x, outs in succ.items() for y in outs}


def make_partial_ballot(
    top: Iterable[int],
    middle: Iterable[int],
    bottom: Iterable[int],
    registry: CandidateRegistry,
    precedence: Iterable[tuple[int, int]] = (),
    voter: int | None = None,
) -> PartialBallot:
    """Validate one raw ballot record and close its order constraints.

    Checks, in order: ids known to the registry, the three parts disjoint,
    the parts jointly covering the registry, order edges confined to the
    middle, and acyclicity after transitive closure.
    """
    where = f" (voter {voter})" if voter is not None else ""
    tset, mset, bset = frozenset(top), frozenset(middle), frozenset(bottom)
    for cid in itertools.chain(tset, mset, bset):
        if not 0 <= cid < len(registry):
            raise UnknownCandidateError(f"candidate id {cid} out of range{where}")
    if tset & mset or tset & bset or mset & bset:
        dup = (tset & mset) | (tset & bset) | (mset & bset)
        names = ", ".join(sorted(registry.name_of(c) for c in dup))
        raise PartitionOverlapError(f"candidates in more than one part{where}: {names}")
    missing = frozenset(range(len(registry))) - tset - mset - bset
    if missing:
        names = ", ".join(sorted(registry.name_of(c) for c in missing))
        raise PartitionIncompleteError(f"candidates in no part{where}: {names}")
    raw_edges = set(precedence)
    for x, y in raw_edges:
        if x not in mset or y not in mset:
            raise EdgeOutsideMiddleError(
                f"order edge ({x}, {y}) leaves the middle{where}"
            )
    closed = _transitive_closure(raw_edges)
    if any(x == y for x, y in raw_edges) or any((y, x) in closed for x, y in closed):
        raise CycleDetectedError(f"order constraints are cyclic{where}")
    return PartialBallot(tset, mset, bset, frozenset(closed))


def validate_partial_profile(
    records: Sequence[tuple],
    registry: CandidateRegistry,
) -> PartialProfile:
    """Build a profile from raw (top, middle, bottom[, edges]) records."""
    ballots = []
    for i, record in enumerate(records):
        top, middle, bottom = record[0], record[1], record[2]
        edges = record[3] if len(record) > 3 else ()
        ballots.append(make_partial_ballot(top, middle, bottom, registry, edges, i))
    return PartialProfile(registry, tuple(ballots))


def classify(profile: PartialProfile) -> ModelClass:
    """Structural class of the profile; ties resolve to THREE_VALUED."""
    if all(b.is_three_valued() for b in profile.ballots):
        return ModelClass.THREE_VALUED
    if all(b.is_totally_ordered() for b in profile.ballots):
        return ModelClass.LINEAR
    return ModelClass.POSET


def is_three_valued(profile: PartialProfile) -> bool:
    """True when every ballot is free of order constraints."""
    return all(b.is_three_valued() for b in profile.ballots)


def is_linearly_ordered(profile: PartialProfile) -> bool:
    """True when every ballot's middle is totally ordered.

    Middles of size at most one count, so this can hold together with
    is_three_valued; dispatchers treat both as capabilities, not classes.
    """
    return all(b.is_totally_ordered() for b in profile.ballots)


def _upward_closed(ballot: PartialBallot, chosen: frozenset[int]) -> bool:
    return all(x in chosen for x, y in ballot.precedence if y in chosen)


def completions_of_ballot(ballot: PartialBallot) -> list[ApprovalBallot]:
    """All completions of one ballot, in a deterministic order.

    The order is by the bitmask of the chosen middle subset, bits assigned
    to middle candidates in ascending id order. For a totally ordered
    middle this yields exactly the q+1 prefixes of the ranking.
    """
    mids = sorted(ballot.middle)
    out = []
    for mask in range(1 << len(mids)):
        chosen = frozenset(c for i, c in enumerate(mids) if mask >> i & 1)
        if _upward_closed(ballot, chosen):
            out.append(ApprovalBallot(frozenset(ballot.top | chosen)))
    return out


def count_ballot_completions(ballot: PartialBallot) -> int:
    """Number of completions of one ballot, without enumerating them.

    Counts upward-closed middle subsets by the standard split on one
    element x: either x is in the subset (forcing everything above it) or
    not (excluding everything below it).
    """
    if not ballot.precedence:
        return 1 << len(ballot.middle)
    above: dict[int, frozenset[int]] = {c: ballot.forced_by(c) for c in ballot.middle}
    below = {
        c: frozenset({c} | {y for x, y in ballot.precedence if x == c})
        for c in ballot.middle
    }
    cache: dict[frozenset[int], int] = {}

    def count(elems: frozenset[int]) -> int:
        if not elems:
            return 1
        got = cache.get(elems)
        if got is None:
            x = min(elems)
            got = count(elems - above[x]) + count(elems - below[x])
            cache[elems] = got
        return got

    return count(ballot.middle)


def count_completions(profile: PartialProfile) -> int:
    """Number of joint completions of the whole profile."""
    total = 1
    for ballot in profile.ballots:
        total *= count_ballot_completions(ballot)
    return total


def enumerate_completions(
    profile: PartialProfile, cap: int = DEFAULT_CAP
) -> Iterator[ApprovalProfile]:
    """Stream every joint completion, voter-major lexicographic.

    The first voter's completion varies slowest; within a voter the order
    is that of completions_of_ballot. Raises CapExceededError before any
    enumeration work if the joint count exceeds ``cap``.
    """
    total = count_completions(profile)
    if total > cap:
        raise CapExceededError(f"{total} completions exceed the cap of {cap}")
    per_voter = [completions_of_ballot(b) for b in profile.ballots]
    registry = profile.registry
    for choice in itertools.product(*per_voter):
        yield ApprovalProfile(registry, tuple(choice))


def is_completion(approvals: ApprovalProfile, profile: PartialProfile) -> bool:
    """Whether a complete profile is a completion of a partial one."""
    if approvals.n != profile.n or approvals.registry != profile.registry:
        raise ShapeMismatchError("profiles differ in voters or registry")
    for complete, partial in zip(approvals.ballots, profile.ballots):
        chosen = complete.approved - partial.top
        if not partial.top <= complete.approved:
            return False
        if chosen - partial.middle:
            return False
        if not _upward_closed(partial, frozenset(chosen)):
            return False
    return True


def complete_profile(
    registry: CandidateRegistry, approvals: Iterable[Iterable[int]]
) -> ApprovalProfile:
    """Convenience constructor for a complete profile from id sets."""
    return ApprovalProfile(
        registry, tuple(ApprovalBallot(frozenset(a)) for a in approvals)
    )


def as_partial(profile: ApprovalProfile) -> PartialProfile:
    """View a complete profile as the partial profile with empty middles."""
    m = profile.m
    everyone = frozenset(range(m))
    return PartialProfile(
        profile.registry,
        tuple(
            PartialBallot(b.approved, frozenset(), everyone - b.approved)
            for b in profile.ballots
        ),
    )
