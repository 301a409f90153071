"""Exception types shared across the package."""

from __future__ import annotations


class EvcError(Exception):
    """Base class for all package errors."""


class DegenerateParameters(EvcError):
    """Grid parameters outside the allowed range (e.g. h=1, odd hex height)."""


class TooLarge(EvcError):
    """Instance exceeds the configured solver cap."""


class NoneFound(EvcError):
    """No eternal cover found within the requested guard budget."""


class NotACover(EvcError):
    """A guard set used as a game state does not cover every edge."""


class SizeMismatch(EvcError):
    """Defense target has a different cardinality than the guard set."""


class IllegalMove(EvcError):
    """A defense move violates injectivity, adjacency or the forced edge."""


class CoverBroken(EvcError):
    """A defense move produced a non-cover: the defender loses."""


class Indefensible(EvcError):
    """A strategy could not produce a legal defense. Never swallowed."""

    def __init__(self, message: str, trace: dict | None = None):
        super().__init__(message)
        self.trace = trace or {}


class NotApplicable(EvcError):
    """Strategy asked to play on a graph outside its declared domain."""


class NoLegalAttack(EvcError):
    """The attacker has no edge with exactly one guarded endpoint."""


class IllegalAttack(EvcError):
    """Attacked edge is not in the graph or has no guarded endpoint."""


class UnknownSession(EvcError):
    """Session id not found."""


class Conflict(EvcError):
    """Optimistic concurrency conflict: another attack won this round."""
