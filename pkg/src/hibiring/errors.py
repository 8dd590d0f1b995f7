"""Exception hierarchy.

``InputError`` subclasses signal problems with user-supplied documents or
posets (CLI exit code 1).  ``Inconsistent`` signals a failed internal
cross-check, i.e. an engine bug (CLI exit code 2).
"""

from __future__ import annotations


class HibiError(Exception):
    """Base class for all package errors."""


class InputError(HibiError):
    """A document or poset description is invalid."""


class InvalidDocument(InputError):
    """Document does not follow the poset JSON schema."""


class DuplicateElement(InputError):
    pass


class UnknownElementInCover(InputError):
    pass


class CycleDetected(InputError):
    pass


class NoUniqueMinimal(InputError):
    pass


class NonReducedCover(InputError):
    """A cover pair is implied by other covers; input must be reduced."""


class UnknownElement(HibiError):
    """An element name does not belong to the poset."""


class NotComparable(HibiError):
    """rank[x, y] requested for incomparable x, y."""


class EmptySubset(HibiError):
    pass


class NotAnIdeal(HibiError):
    """Subset is not a nonempty downward-closed subset of the poset."""


class GapTooSmall(HibiError):
    """Cross-boundary value gap is below 2; ideal reduction not applicable."""


class NotInterior(HibiError):
    """Valuation is not strictly order-reversing and positive."""


class NotMinimal(HibiError):
    pass


class NotZigzag(HibiError):
    """Sequence violates one of the zigzag-sequence conditions."""


class SizeGuard(InputError):
    """An enumeration budget would be exceeded.

    Carries the offending size and the configured limit so callers can
    suggest a remedy (CLI flag / environment variable).
    """

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what} {size} exceeds budget {limit}")


class Inconsistent(HibiError):
    """A cross-check between two independent routes failed (engine bug)."""
