"""Approval-based committee queries over incomplete ballots.

The package answers four families of questions about an approval
profile whose ballots may be undecided on part of the candidate set:
whether a committee can or must win under a scoring rule, whether a
candidate can or must belong to a winning committee, whether a committee
satisfies the justified-representation family of axioms, and whether an
incomplete profile can or must satisfy them once completed.
"""

from .errors import (
    AbcuError,
    BadEditError,
    BadKError,
    BadThresholdError,
    CandidateInCommitteeError,
    CapExceededError,
    CycleDetectedError,
    DivisibilityError,
    EdgeOutsideMiddleError,
    InputError,
    ModelMismatchError,
    NoPolyAlgorithmError,
    PartitionIncompleteError,
    PartitionOverlapError,
    ProfileSyntaxError,
    ResourceRefusal,
    ShapeMismatchError,
    TableOutOfRangeError,
    TooLargeError,
    TooManyVotersError,
    UnknownCandidateError,
)
from .model import (
    DEFAULT_CAP,
    ApprovalBallot,
    ApprovalProfile,
    CandidateRegistry,
    ModelClass,
    PartialBallot,
    PartialProfile,
    as_partial,
    classify,
    complete_profile,
    completions_of_ballot,
    count_ballot_completions,
    count_completions,
    enumerate_completions,
    is_completion,
    is_linearly_ordered,
    is_three_valued,
    make_partial_ballot,
    validate_partial_profile,
)
from .necessary import (
    ScoreDiffReport,
    max_diff_ballot,
    max_diff_profile,
    neccom,
    necmem,
    necmem_av_3va,
    necmem_av_linear,
    necmem_binary_linear,
)
from .possible import (
    Decision,
    poscom,
    poscom_av_3va,
    poscom_binary_linear,
    poscom_brute,
    posmem,
    posmem_av_linear,
)
from .reductions import (
    GadgetOutput,
    OneInThreeInstance,
    X3CInstance,
    build_cc_3va,
    build_linear_x3c,
    pad_profile,
    parse_one_in_three,
    parse_x3c,
    solve_one_in_three_brute,
    solve_x3c_brute,
    verify_weight_relation,
)
from .representation import (
    GroupWitness,
    check_axiom,
    check_axiom_brute,
    check_ejr,
    check_jr,
    check_pjr,
    jr_modification_check,
    necessary_axiom_by_scan,
    necjr,
    posjr,
    possible_axiom_by_scan,
)
from .rules import (
    AV,
    CC,
    PAV,
    SAV,
    Committee,
    ScoringFunction,
    WeightFunction,
    ballot_score,
    binary_rule,
    committees_by_mask,
    defeats,
    eval_weight,
    is_winning_committee,
    parse_rule_spec,
    profile_score,
    winning_committees,
)

__all__ = [name for name in dir() if not name.startswith("_")]
