"""Exception hierarchy for the workbench.

``ParseError`` carries a character position; everything else derives from
``DomainError`` so the CLI can map math-level failures to exit code 1 and
the service can map them to structured 4xx bodies.
"""

from __future__ import annotations


class WorkbenchError(Exception):
    """Base class for every error raised by this package."""


class ParseError(WorkbenchError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos
        self.reason = message


class DomainError(WorkbenchError):
    """A mathematically well-posed request that cannot be satisfied."""


class PreconditionError(DomainError):
    """An operation was called outside its stated precondition."""


class EmptySetError(DomainError):
    """Enumeration ran off the end of a finite set."""


class PartitionError(DomainError):
    """Sets that were required to (almost) partition the naturals do not."""


class NotNormalFormError(DomainError):
    """A box operation that requires normal form got a raw constraint list."""


class RefinementEmptyError(DomainError):
    """Refining a box produced an empty set of functions.

    ``constraint`` holds the offending (source, target) pair.
    """

    def __init__(self, message: str, constraint=None):
        super().__init__(message)
        self.constraint = constraint


class StraddlingSeedError(DomainError):
    """A seed set meets several parts of a partitioned box infinitely."""


class SchemeError(DomainError):
    """Invalid scheme tree input (validation, repair or depth failures)."""


class CertificateError(DomainError):
    """A refinement certificate fails its almost-containment obligations."""


class IllegalMoveError(DomainError):
    """A game move was rejected; the state is unchanged.

    ``reason`` is a short machine-readable tag, the message is for humans.
    """

    def __init__(self, message: str, reason: str = "illegal-move"):
        super().__init__(message)
        self.reason = reason


class SearchError(DomainError):
    """A witness search failed; only possible when a precondition was violated."""
