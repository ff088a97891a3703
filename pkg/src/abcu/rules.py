"""Committee scoring rules and winner determination.

A weight function w maps the number of committee members a voter
approves to a score contribution; the committee's score is the sum over
voters. w(x) = x gives utilitarian approval voting, the harmonic weights
give proportional approval voting, and a 0/1 step at threshold t gives
the t-of-k family (t = 1 is coverage). Beyond weight-based rules, a
scoring rule may read the ballot size too: f(|A and S|, |A|), kept
non-decreasing in the first argument. Satisfaction approval (share of an
approved ballot inside the committee) is the common example.

All scores are exact rationals; nothing here rounds or normalizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import (
    BadKError,
    CandidateInCommitteeError,
    TableOutOfRangeError,
    UnknownCandidateError,
)
from .model import ApprovalBallot, ApprovalProfile

Committee = frozenset[int]


@dataclass(frozen=True)
class WeightFunction:
    """One weight function, tagged by kind for algorithm dispatch.

    Kinds: "av" (w(x) = x), "pav" (harmonic), "binary" (0 below
    ``threshold``, 1 at or above it), "table" (explicit values, index =
    x). Dispatchers read the tag, not the numbers, so a table that
    happens to equal av does not unlock av-only routes.
    """

    kind: str
    threshold: int = 0
    values: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("av", "pav", "binary", "table"):
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "binary" and self.threshold < 1:
            raise ValueError("binary threshold must be a positive integer")
        if self.kind == "table":
            if not self.values or self.values[0] != 0:
                raise ValueError("weight table must start at w(0) = 0")
            if any(a > b for a, b in zip(self.values, self.values[1:])):
                raise ValueError("weight table must be non-decreasing")

    @staticmethod
    def av() -> "WeightFunction":
        return WeightFunction("av")

    @staticmethod
    def pav() -> "WeightFunction":
        return WeightFunction("pav")

    @staticmethod
    def cc() -> "WeightFunction":
        return WeightFunction("binary", threshold=1)

    @staticmethod
    def binary(t: int) -> "WeightFunction":
        return WeightFunction("binary", threshold=t)

    @staticmethod
    def table(values) -> "WeightFunction":
        return WeightFunction("table", values=tuple(Fraction(v) for v in values))


_PAV_CACHE: list[Fraction] = [Fraction(0)]


def eval_weight(w: WeightFunction, x: int) -> Fraction:
    """w(x) as an exact rational; tables raise past their last index."""
    if x < 0:
        raise ValueError("weight argument must be non-negative")
    if w.kind == "av":
        return Fraction(x)
    if w.kind == "pav":
        while len(_PAV_CACHE) <= x:
            _PAV_CACHE.append(_PAV_CACHE[-1] + Fraction(1, len(_PAV_CACHE)))
        return _PAV_CACHE[x]
    if w.kind == "binary":
        return Fraction(1) if x >= w.threshold else Fraction(0)
    if x >= len(w.values):
        raise TableOutOfRangeError(f"weight table has no entry for x = {x}")
    return w.values[x]


@dataclass(frozen=True)
class ScoringFunction:
    """A committee scoring rule.

    Kinds: "thiele" (weight of the overlap, ballot size ignored), "sav"
    (overlap divided by ballot size, 0 on the empty ballot), "table2d"
    (explicit f(overlap, ballot size) entries).
    """

    kind: str
    weight: WeightFunction | None = None
    entries: Mapping[tuple[int, int], Fraction] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("thiele", "sav", "table2d"):
            raise ValueError(f"unknown scoring kind {self.kind!r}")
        if self.kind == "thiele" and self.weight is None:
            raise ValueError("thiele scoring needs a weight function")
        if self.kind == "table2d":
            if self.entries is None:
                raise ValueError("table2d scoring needs entries")
            by_size: dict[int, list[tuple[int, Fraction]]] = {}
            for (x, y), v in self.entries.items():
                by_size.setdefault(y, []).append((x, v))
            for pairs in by_size.values():
                pairs.sort()
                if any(a[1] > b[1] for a, b in zip(pairs, pairs[1:])):
                    raise ValueError("scores must be non-decreasing in the overlap")

    @staticmethod
    def thiele(w: WeightFunction) -> "ScoringFunction":
        return ScoringFunction("thiele", weight=w)

    @staticmethod
    def sav() -> "ScoringFunction":
        return ScoringFunction("sav")

    @staticmethod
    def table2d(entries: Mapping[tuple[int, int], Fraction]) -> "ScoringFunction":
        return ScoringFunction("table2d", entries=dict(entries))

    @property
    def is_thiele(self) -> bool:
        return self.kind == "thiele"

    @property
    def binary_threshold(self) -> int | None:
        """t when the rule is a 0/1 step rule, else None."""
        if self.kind == "thiele" and self.weight.kind == "binary":
            return self.weight.threshold
        return None

    @property
    def is_av(self) -> bool:
        return self.kind == "thiele" and self.weight.kind == "av"

    @property
    def label(self) -> str:
        """Short human-readable name used in diagnostics."""
        if self.kind != "thiele":
            return self.kind
        w = self.weight
        if w.kind == "binary":
            return "coverage" if w.threshold == 1 else f"binary({w.threshold})"
        return w.kind


AV = ScoringFunction.thiele(WeightFunction.av())
PAV = ScoringFunction.thiele(WeightFunction.pav())
CC = ScoringFunction.thiele(WeightFunction.cc())
SAV = ScoringFunction.sav()


def binary_rule(t: int) -> ScoringFunction:
    return ScoringFunction.thiele(WeightFunction.binary(t))


def ballot_score(f: ScoringFunction, ballot: ApprovalBallot, committee: Committee) -> Fraction:
    """One voter's contribution to the committee's score."""
    overlap = len(ballot.approved & committee)
    if f.kind == "thiele":
        return eval_weight(f.weight, overlap)
    if f.kind == "sav":
        size = len(ballot.approved)
        return Fraction(overlap, size) if size else Fraction(0)
    value = f.entries.get((overlap, len(ballot.approved)))
    if value is None:
        raise TableOutOfRangeError(
            f"no score entry for overlap {overlap}, ballot size {len(ballot.approved)}"
        )
    return value


def profile_score(f: ScoringFunction, profile: ApprovalProfile, committee: Committee) -> Fraction:
    return sum((ballot_score(f, b, committee) for b in profile.ballots), Fraction(0))


def committees_by_mask(m: int, k: int) -> Iterator[Committee]:
    """All size-k subsets of range(m), ascending by candidate-id bitmask.

    This is the tie-break order every witness-producing scan uses. Gosper's
    hack walks the masks directly, so no sort is needed.
    """
    if k == 0:
        yield frozenset()
        return
    mask = (1 << k) - 1
    limit = 1 << m
    while mask < limit:
        yield frozenset(i for i in range(m) if mask >> i & 1)
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) // low) >> 2)


def check_committee_size(committee: Committee, k: int, m: int) -> None:
    if not 1 <= k <= m:
        raise BadKError(f"k = {k} out of range for {m} candidates")
    if len(committee) != k:
        raise BadKError(f"committee has {len(committee)} members, expected {k}")
    for cid in committee:
        if not 0 <= cid < m:
            raise UnknownCandidateError(f"candidate id {cid} out of range")


def winning_committees(
    f: ScoringFunction, profile: ApprovalProfile, k: int
) -> set[Committee]:
    """All maximum-score committees of size k, by exhaustive scan."""
    if not 1 <= k <= profile.m:
        raise BadKError(f"k = {k} out of range for {profile.m} candidates")
    best: Fraction | None = None
    winners: set[Committee] = set()
    for committee in committees_by_mask(profile.m, k):
        score = profile_score(f, profile, committee)
        if best is None or score > best:
            best = score
            winners = {committee}
        elif score == best:
            winners.add(committee)
    return winners


def is_winning_committee(
    f: ScoringFunction, profile: ApprovalProfile, committee: Committee
) -> bool:
    """Whether no same-size committee scores strictly higher."""
    k = len(committee)
    own = profile_score(f, profile, committee)
    return all(
        profile_score(f, profile, other) <= own
        for other in committees_by_mask(profile.m, k)
    )


def defeats(
    f: ScoringFunction,
    profile: ApprovalProfile,
    committee: Committee,
    candidate: int,
) -> bool:
    """Whether W strictly beats every same-size committee containing c."""
    if not 0 <= candidate < profile.m:
        raise UnknownCandidateError(f"candidate id {candidate} out of range")
    if candidate in committee:
        raise CandidateInCommitteeError(
            f"candidate {candidate} is already in the committee"
        )
    k = len(committee)
    if not 1 <= k <= profile.m:
        raise BadKError(f"k = {k} out of range for {profile.m} candidates")
    own = profile_score(f, profile, committee)
    others = [i for i in range(profile.m) if i != candidate]
    for rest in committees_by_mask(len(others), k - 1):
        rival = frozenset({candidate} | {others[i] for i in rest})
        if profile_score(f, profile, rival) >= own:
            return False
    return True


def parse_rule_spec(spec: str) -> ScoringFunction:
    """Parse a rule specifier.

    Grammar: ``av``, ``cc``, ``pav``, ``sav``, ``binary:<t>``, or
    ``table:<r0,r1,...>`` where each r is an integer or ``p/q`` rational.
    """
    text = spec.strip().lower()
    if text == "av":
        return AV
    if text == "cc":
        return CC
    if text == "pav":
        return PAV
    if text == "sav":
        return SAV
    if text.startswith("binary:"):
        arg = text[len("binary:"):]
        try:
            t = int(arg)
        except ValueError:
            raise ValueError(f"bad binary threshold {arg!r}") from None
        return binary_rule(t)
    if text.startswith("table:"):
        arg = text[len("table:"):]
        try:
            values = [Fraction(part.strip()) for part in arg.split(",")]
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad weight table {arg!r}") from None
        return ScoringFunction.thiele(WeightFunction.table(values))
    raise ValueError(f"unknown rule specifier {spec!r}")
