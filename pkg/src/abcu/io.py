"""Profile documents and result documents.

Profiles travel as JSON objects: a candidate name list, an optional
default committee size k, and one record per voter with "top", "middle",
"bottom" and "order" arrays of candidate names. "top" and "middle"
default to empty, "bottom" to everything not placed elsewhere, "order"
to no constraints; a complete profile is simply one whose middles are
all empty. Serialization is canonical (sorted keys, arrays in registry
order, order pairs as the full transitive closure) so fixtures diff
cleanly. Results leave as single JSON objects with a fixed key order and
exact rationals rendered as p/q strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import ProfileSyntaxError
from .model import (
    ApprovalProfile,
    CandidateRegistry,
    PartialProfile,
    validate_partial_profile,
)
from .possible import Decision
from .representation import GroupWitness

_VOTER_KEYS = {"top", "middle", "bottom", "order"}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ProfileSyntaxError(message)


def _name_list(value: Any, context: str) -> list[str]:
    _require(isinstance(value, list), f"{context} must be an array")
    for name in value:
        _require(isinstance(name, str), f"{context} must contain names only")
    _require(len(set(value)) == len(value), f"{context} repeats a candidate")
    return value


def parse_profile(text: str) -> tuple[PartialProfile, int | None]:
    """Parse a profile document; returns the profile and its default k."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileSyntaxError(f"not valid JSON: {exc}") from None
    _require(isinstance(doc, dict), "profile document must be an object")
    unknown = set(doc) - {"candidates", "voters", "k"}
    _require(not unknown, f"unknown profile keys: {sorted(unknown)}")
    names = _name_list(doc.get("candidates"), '"candidates"')
    _require(len(names) > 0, "at least one candidate is required")
    registry = CandidateRegistry(tuple(names))
    k = doc.get("k")
    if k is not None:
        _require(isinstance(k, int) and not isinstance(k, bool) and k >= 1,
                 '"k" must be a positive integer')
    voters = doc.get("voters")
    _require(isinstance(voters, list), '"voters" must be an array')
    records = []
    for i, voter in enumerate(voters):
        _require(isinstance(voter, dict), f"voter {i} must be an object")
        unknown = set(voter) - _VOTER_KEYS
        _require(not unknown, f"voter {i} has unknown keys: {sorted(unknown)}")
        top = _name_list(voter.get("top", []), f'voter {i} "top"')
        middle = _name_list(voter.get("middle", []), f'voter {i} "middle"')
        top_ids = [registry.id_of(name) for name in top]
        middle_ids = [registry.id_of(name) for name in middle]
        if "bottom" in voter:
            bottom = _name_list(voter["bottom"], f'voter {i} "bottom"')
            bottom_ids = [registry.id_of(name) for name in bottom]
        else:
            placed = set(top_ids) | set(middle_ids)
            bottom_ids = [c for c in range(len(registry)) if c not in placed]
        order = voter.get("order", [])
        _require(isinstance(order, list), f'voter {i} "order" must be an array')
        edges = []
        for pair in order:
            _require(
                isinstance(pair, list) and len(pair) == 2
                and all(isinstance(p, str) for p in pair),
                f'voter {i} "order" entries must be [name, name] pairs',
            )
            edges.append((registry.id_of(pair[0]), registry.id_of(pair[1])))
        records.append((top_ids, middle_ids, bottom_ids, edges))
    return validate_partial_profile(records, registry), k


def _names(registry: CandidateRegistry, ids) -> list[str]:
    return [registry.names[c] for c in sorted(ids)]


def profile_document(profile: PartialProfile, k: int | None = None) -> dict:
    """The canonical JSON object form of a profile."""
    voters = []
    for b in profile.ballots:
        record: dict[str, Any] = {
            "top": _names(profile.registry, b.top),
            "middle": _names(profile.registry, b.middle),
            "bottom": _names(profile.registry, b.bottom),
        }
        if b.precedence:
            record["order"] = [
                [profile.registry.names[x], profile.registry.names[y]]
                for x, y in sorted(b.precedence)
            ]
        voters.append(record)
    doc: dict[str, Any] = {"candidates": list(profile.registry.names)}
    if k is not None:
        doc["k"] = k
    doc["voters"] = voters
    return doc


def serialize_profile(profile: PartialProfile, k: int | None = None) -> str:
    return json.dumps(profile_document(profile, k), indent=2, sort_keys=True)


def completion_rows(profile: ApprovalProfile) -> list[list[str]]:
    """A complete profile as per-voter approval name arrays."""
    return [_names(profile.registry, b.approved) for b in profile.ballots]


def decision_document(
    query: str,
    decision: Decision,
    registry: CandidateRegistry,
    include_witness: bool = False,
    extra: dict | None = None,
) -> dict:
    doc: dict[str, Any] = {
        "query": query,
        "answer": decision.answer,
        "method": decision.method_used,
    }
    if extra:
        doc.update(extra)
    if decision.witness_committee is not None:
        doc["witness_committee"] = _names(registry, decision.witness_committee)
    if include_witness and decision.witness is not None:
        doc["witness"] = completion_rows(decision.witness)
    return doc


def group_witness_document(witness: GroupWitness, registry: CandidateRegistry) -> dict:
    doc: dict[str, Any] = {
        "voters": sorted(witness.voters),
        "common": _names(registry, witness.common),
        "level": witness.level,
    }
    if witness.allowed is not None:
        doc["allowed"] = _names(registry, witness.allowed)
    return doc


def serialize_result(doc: dict) -> str:
    """Render a result document; key order is insertion order, rationals p/q."""

    def normalize(value):
        if isinstance(value, Fraction):
            return str(value)
        if isinstance(value, dict):
            return {key: normalize(inner) for key, inner in value.items()}
        if isinstance(value, (list, tuple)):
            return [normalize(inner) for inner in value]
        return value

    return json.dumps(normalize(doc), indent=2)
