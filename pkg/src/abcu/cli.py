"""Command-line interface.

One subcommand per query. Every run reads a profile document (or a
gadget instance file), prints one result document to standard output and
reserves standard error for diagnostics. Exit codes: 0 for a true answer
or produced output, 1 for a false answer, 2 for usage and validation
problems, 3 when work is refused (completion cap exceeded, or no
polynomial algorithm under method=poly).
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .errors import InputError, ResourceRefusal
from .io import (
    completion_rows,
    decision_document,
    group_witness_document,
    parse_profile,
    profile_document,
    serialize_result,
)
from .model import (
    DEFAULT_CAP,
    ApprovalBallot,
    ApprovalProfile,
    PartialProfile,
    count_completions,
    enumerate_completions,
)
from .necessary import neccom, necmem
from .possible import poscom, posmem
from .reductions import build_cc_3va, build_linear_x3c, parse_one_in_three, parse_x3c
from .representation import (
    check_axiom,
    necessary_axiom_by_scan,
    necjr,
    posjr,
    possible_axiom_by_scan,
)
from .rules import parse_rule_spec, profile_score, winning_committees

ENV_CAP = "ABCU_CAP"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abcu",
        description="Committee queries over incomplete approval profiles.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_text: str, *, rule=False, committee=False,
            candidate=False, method=False, axiom=False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--profile", required=True, help="profile document (JSON file)")
        p.add_argument("--k", type=int, help="committee size (defaults to the document's k)")
        p.add_argument("--cap", type=int, help="completion cap (default 1048576, env ABCU_CAP)")
        p.add_argument("--witness", action="store_true", help="include witness in output")
        if rule:
            p.add_argument("--rule", required=True,
                           help="av | cc | pav | sav | binary:<t> | table:<r0,r1,...>")
        if committee:
            p.add_argument("--committee", required=True, help="comma-separated candidate names")
        if candidate:
            p.add_argument("--candidate", required=True, help="candidate name")
        if method:
            p.add_argument("--method", choices=("auto", "poly", "brute"), default="auto")
        if axiom:
            p.add_argument("--axiom", choices=("jr", "pjr", "ejr"), default="jr")
        return p

    add("winners", "winning committees of a complete profile", rule=True)
    add("poscom", "is the committee a winner in some completion",
        rule=True, committee=True, method=True)
    add("neccom", "is the committee a winner in every completion",
        rule=True, committee=True)
    add("posmem", "is the candidate in a winning committee in some completion",
        rule=True, candidate=True, method=True)
    add("necmem", "is the candidate in a winning committee in every completion",
        rule=True, candidate=True, method=True)
    add("posjr", "does some completion satisfy the axiom", committee=True, axiom=True)
    add("necjr", "does every completion satisfy the axiom", committee=True, axiom=True)
    add("check", "check a representation axiom on a complete profile",
        committee=True, axiom=True)
    add("enumerate", "list the completions of a profile")

    gen = sub.add_parser("gen", help="generate a gadget query from an instance file")
    gen.add_argument("--gadget", required=True, choices=("cc3va", "linearx3c"))
    gen.add_argument("--instance", required=True, help="instance file")
    gen.add_argument("--x", help="weight step for linearx3c (integer or p/q)")
    return parser


def _resolve_cap(args) -> int:
    if getattr(args, "cap", None) is not None:
        return args.cap
    raw = os.environ.get(ENV_CAP)
    if raw is not None:
        try:
            return int(raw)
        except ValueError:
            raise InputError(f"{ENV_CAP} must be an integer, got {raw!r}") from None
    return DEFAULT_CAP


def _load_profile(args) -> tuple[PartialProfile, int]:
    with open(args.profile, encoding="utf-8") as handle:
        profile, doc_k = parse_profile(handle.read())
    k = args.k if args.k is not None else doc_k
    if k is None:
        raise InputError("committee size missing: pass --k or put k in the document")
    return profile, k


def _require_complete(profile: PartialProfile, command: str) -> None:
    if any(b.middle for b in profile.ballots):
        raise InputError(
            f"{command} needs a complete profile (empty middles); "
            "use poscom/neccom for incomplete ones"
        )


def _as_complete(profile: PartialProfile) -> ApprovalProfile:
    return ApprovalProfile(
        profile.registry, tuple(ApprovalBallot(b.top) for b in profile.ballots)
    )


def _committee(args, profile: PartialProfile) -> frozenset[int]:
    names = [part.strip() for part in args.committee.split(",") if part.strip()]
    return frozenset(profile.registry.id_of(name) for name in names)


def _handle_winners(args) -> tuple[dict, int]:
    profile, k = _load_profile(args)
    _require_complete(profile, "winners")
    complete = _as_complete(profile)
    rule = parse_rule_spec(args.rule)
    winners = sorted(
        winning_committees(rule, complete, k),
        key=lambda w: sum(1 << c for c in w),
    )
    doc = {
        "query": "winners",
        "answer": True,
        "method": "exhaustive-scan",
        "k": k,
        "score": profile_score(rule, complete, winners[0]),
        "committees": [
            [profile.registry.names[c] for c in sorted(w)] for w in winners
        ],
    }
    return doc, 0


def _handle_poscom(args) -> tuple[dict, int]:
    profile, k = _load_profile(args)
    decision = poscom(
        profile, _committee(args, profile), parse_rule_spec(args.rule), k,
        method=args.method, cap=_resolve_cap(args),
    )
    doc = decision_document("poscom", decision, profile.registry, args.witness)
    return doc, 0 if decision.answer else 1


def _handle_neccom(args) -> tuple[dict, int]:
    profile, k = _load_profile(args)
    decision = neccom(parse_rule_spec(args.rule), profile, _committee(args, profile), k)
    doc = decision_document("neccom", decision, profile.registry, args.witness)
    return doc, 0 if decision.answer else 1


def _handle_posmem(args) -> tuple[dict, int]:
    profile, k = _load_profile(args)
    decision = posmem(
        profile, profile.registry.id_of(args.candidate), parse_rule_spec(args.rule),
        k, method=args.method, cap=_resolve_cap(args),
    )
    doc = decision_document("posmem", decision, profile.registry, args.witness)
    return doc, 0 if decision.answer else 1


def _handle_necmem(args) -> tuple[dict, int]:
    profile, k = _load_profile(args)
    decision = necmem(
        profile, profile.registry.id_of(args.candidate), parse_rule_spec(args.rule),
        k, method=args.method, cap=_resolve_cap(args),
    )
    doc = decision_document("necmem", decision, profile.registry, args.witness)
    return doc, 0 if decision.answer else 1


def _handle_posjr(args) -> tuple[dict, int]:
    profile, k = _load_profile(args)
    committee = _committee(args, profile)
    if args.axiom == "jr":
        decision = posjr(profile, committee, k)
    else:
        decision = possible_axiom_by_scan(
            profile, committee, k, args.axiom, cap=_resolve_cap(args)
        )
    doc = decision_document(
        "posjr", decision, profile.registry, args.witness, {"axiom": args.axiom}
    )
    return doc, 0 if decision.answer else 1


def _handle_necjr(args) -> tuple[dict, int]:
    profile, k = _load_profile(args)
    committee = _committee(args, profile)
    if args.axiom == "jr":
        decision = necjr(profile, committee, k)
    else:
        decision = necessary_axiom_by_scan(
            profile, committee, k, args.axiom, cap=_resolve_cap(args)
        )
    doc = decision_document(
        "necjr", decision, profile.registry, args.witness, {"axiom": args.axiom}
    )
    return doc, 0 if decision.answer else 1


def _handle_check(args) -> tuple[dict, int]:
    profile, k = _load_profile(args)
    _require_complete(profile, "check")
    complete = _as_complete(profile)
    committee = _committee(args, profile)
    satisfied, witness = check_axiom(complete, committee, k, args.axiom)
    doc = {
        "query": "check",
        "answer": satisfied,
        "method": "subset-scan",
        "axiom": args.axiom,
    }
    if witness is not None:
        doc["group_witness"] = group_witness_document(witness, profile.registry)
    return doc, 0 if satisfied else 1


def _handle_enumerate(args) -> tuple[dict, int]:
    profile, _k = _load_profile(args)
    cap = _resolve_cap(args)
    completions = [
        completion_rows(completion)
        for completion in enumerate_completions(profile, cap)
    ]
    doc = {
        "query": "enumerate",
        "answer": True,
        "method": "enumeration",
        "count": count_completions(profile),
        "completions": completions,
    }
    return doc, 0


def _handle_gen(args) -> tuple[dict, int]:
    with open(args.instance, encoding="utf-8") as handle:
        text = handle.read()
    if args.gadget == "cc3va":
        if args.x is not None:
            raise InputError("--x applies to the linearx3c gadget only")
        gadget = build_cc_3va(parse_one_in_three(text))
    else:
        if args.x is None:
            raise InputError("linearx3c needs --x (integer or p/q)")
        try:
            step = Fraction(args.x)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad --x value {args.x!r}") from None
        gadget = build_linear_x3c(parse_x3c(text), step)
    registry = gadget.profile.registry
    doc = {
        "query": "gen",
        "answer": True,
        "method": f"gadget-{args.gadget}",
        "rule": gadget.rule_spec,
        "k": gadget.k,
        "target": [registry.names[c] for c in sorted(gadget.target)],
        "profile": profile_document(gadget.profile, gadget.k),
    }
    return doc, 0


_HANDLERS = {
    "winners": _handle_winners,
    "poscom": _handle_poscom,
    "neccom": _handle_neccom,
    "posmem": _handle_posmem,
    "necmem": _handle_necmem,
    "posjr": _handle_posjr,
    "necjr": _handle_necjr,
    "check": _handle_check,
    "enumerate": _handle_enumerate,
    "gen": _handle_gen,
}


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc, code = _HANDLERS[args.command](args)
    except ResourceRefusal as exc:
        print(f"abcu: {exc}", file=sys.stderr)
        return 3
    except (InputError, ValueError, OSError) as exc:
        print(f"abcu: {exc}", file=sys.stderr)
        return 2
    print(serialize_result(doc))
    return code


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
