"""
Error Hierarchy
Every failure the library raises on purpose derives from SchreierIndicesError.
The exit_code attribute is what the command line returns for it.
"""


class SchreierIndicesError(Exception):
    """Base class for all domain errors."""

    exit_code = 1


class UsageError(SchreierIndicesError):
    """Bad command line."""


# ----- input (exit 2) -----

class NotATree(SchreierIndicesError):
    """Edge list does not describe a tree on vertices 1..k with k >= 2."""

    exit_code = 2


class MalformedInput(SchreierIndicesError):
    """Text that cannot be parsed at all."""

    exit_code = 2


# ----- size guards (exit 3) -----

class SizeGuardError(SchreierIndicesError):
    """A configured size limit would be exceeded."""

    exit_code = 3


class LevelTooLarge(SizeGuardError):
    pass


class GraphTooLarge(SizeGuardError):
    pass


class ValueTooLarge(SizeGuardError):
    pass


# ----- domain errors (exit 1) -----

class InvalidEdge(SchreierIndicesError):
    pass


class InvalidRange(SchreierIndicesError):
    pass


class InvalidLevel(SchreierIndicesError):
    pass


class UnknownState(SchreierIndicesError):
    pass


class LoopHasNoSpecialEdges(SchreierIndicesError):
    pass


class LoopEdge(SchreierIndicesError):
    pass


class NoPerfectMatching(SchreierIndicesError):
    pass


class NonIntegerResult(SchreierIndicesError):
    pass


class NotACactusOfCycles(SchreierIndicesError):
    pass


class VerificationMismatch(SchreierIndicesError):
    """At least one verification check failed."""

    exit_code = 4
