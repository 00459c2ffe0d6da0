"""Exception hierarchy shared across ringlab."""

from __future__ import annotations


class RingLabError(Exception):
    """Base class for every error raised by ringlab."""


class RingAxiomError(RingLabError):
    """A table fails one of the ring axioms; ``witness`` names the first offending tuple."""

    def __init__(self, message: str, witness: tuple[int, ...] | None = None) -> None:
        super().__init__(message)
        self.witness = witness


class NotAGroup(RingAxiomError):
    pass


class NotAssociative(RingAxiomError):
    pass


class NotDistributive(RingAxiomError):
    pass


class NotASubring(RingLabError):
    pass


class UnsupportedSpec(RingLabError):
    pass


class OrderLimitExceeded(RingLabError):
    pass


class SizeLimitExceeded(RingLabError):
    pass


class ParentMismatch(RingLabError):
    pass


class NotASubset(RingLabError):
    pass


class NotAVertexSubset(NotASubset):
    pass


class NotASubgroup(RingLabError):
    pass


class NoUnity(RingLabError):
    pass


class NotAGeneratingSet(RingLabError):
    pass


class ParseError(RingLabError):
    """Malformed input document. ``position`` is a JSON path or ``line:col``."""

    def __init__(self, message: str, position: str | None = None) -> None:
        super().__init__(f"{position}: {message}" if position else message)
        self.position = position


class SchemaError(RingLabError):
    pass
