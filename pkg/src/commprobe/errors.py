"""Exception types shared across the package."""
from __future__ import annotations


class CommprobeError(Exception):
    """Base class for all errors raised by this package."""


class GroupTooLargeError(CommprobeError):
    """Enumeration exceeded the configured element cap.

    ``partial_count`` holds the number of elements discovered before the cap
    was hit.
    """

    def __init__(self, cap: int, partial_count: int):
        self.cap = cap
        self.partial_count = partial_count
        super().__init__(
            f"group enumeration exceeded the cap of {cap} elements "
            f"({partial_count} found so far); raise COMMPROBE_MAX_ORDER to allow more"
        )


class TableValidationError(CommprobeError):
    """A candidate multiplication table failed a group-axiom check.

    ``kind`` is one of ``shape``, ``range``, ``identity``, ``inverse``,
    ``associativity``; ``witness`` is the first offending entry or triple.
    """

    def __init__(self, kind: str, message: str, witness: tuple | None = None):
        self.kind = kind
        self.witness = witness
        super().__init__(message)


class ParentMismatchError(CommprobeError):
    """Two subgroups attached to different parent groups were combined."""


class NotNormalError(CommprobeError):
    """An operation required a normal subgroup but got a non-normal one."""


class NotContainedError(CommprobeError):
    """A subgroup argument violated a required containment."""


class HypothesisError(CommprobeError):
    """Arguments violated a theorem's hypothesis (as opposed to its conclusion)."""


class VerificationFailure(CommprobeError):
    """A proof-backed consequence failed to hold on concrete data.

    This firing means a bug somewhere (here or in the caller's inputs), never
    a mathematical possibility.
    """


class CapExceededError(CommprobeError):
    """A computation exceeded a configured work or size cap."""


class WordSyntaxError(CommprobeError):
    """A word expression failed to parse; ``position`` is the offending index."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        super().__init__(message)


class UnsupportedWordError(CommprobeError):
    """A verifier was given a word outside its supported families."""


class AutomorphismError(CommprobeError):
    """A mapping failed to define an automorphism of the group."""


class GroupFileError(CommprobeError):
    """A group file failed to parse; ``line`` is the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
