"""Exception types raised across the package.

Validation problems (malformed profiles, bad parameters) derive from
InputError; refusals to start work whose cost is unbounded or for which
no algorithm exists derive from ResourceRefusal. The CLI maps the former
to exit code 2 and the latter to exit code 3.
"""

from __future__ import annotations


class AbcuError(Exception):
    """Base class for every error this package raises deliberately."""


class InputError(AbcuError):
    """Malformed input or an out-of-contract parameter."""


class ResourceRefusal(AbcuError):
    """Work refused before it starts: too large, or no algorithm."""


# Profile and ballot validation.

class PartitionOverlapError(InputError):
    """A candidate appears in more than one of top/middle/bottom."""


class PartitionIncompleteError(InputError):
    """A candidate is missing from top/middle/bottom."""


class EdgeOutsideMiddleError(InputError):
    """An order constraint mentions a candidate outside the middle."""


class CycleDetectedError(InputError):
    """Order constraints are cyclic after transitive closure."""


class UnknownCandidateError(InputError):
    """A candidate id or name is not in the registry."""


class ShapeMismatchError(InputError):
    """Two profiles disagree on voter count or candidate registry."""


class ProfileSyntaxError(InputError):
    """A profile document is not syntactically well formed."""


# Rule and query parameters.

class TableOutOfRangeError(InputError):
    """A tabulated weight or score was queried outside its table."""


class BadKError(InputError):
    """Committee size k is out of range or disagrees with |W|."""


class CandidateInCommitteeError(InputError):
    """A membership query names a candidate already inside W."""


class ModelMismatchError(InputError):
    """A specialized algorithm was called outside its ballot model."""


class BadThresholdError(InputError):
    """A binary threshold t exceeds the committee size k."""


class BadEditError(InputError):
    """A ballot edit is not one of the supported shapes."""


class DivisibilityError(InputError):
    """Gadget multiplicities do not divide as required."""


class TooManyVotersError(InputError):
    """The definition-level group scan only runs for small electorates."""


class TooLargeError(InputError):
    """An exhaustive solver was handed an instance over its size guard."""


# Refusals.

class CapExceededError(ResourceRefusal):
    """The joint completion count exceeds the configured cap."""


class NoPolyAlgorithmError(ResourceRefusal):
    """method=poly was requested for a cell with no polynomial route."""
