"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

from typing import Any


class RamanujanVerifyError(Exception):
    """Base class for all errors raised by this package."""


class NotConverged(RamanujanVerifyError):
    """A series hit its term cap (or started to grow) before meeting the stopping rule.

    The partial :class:`~ramanujan_verify.numeric.SeriesResult` is attached as
    ``result`` so callers can still inspect the value that was reached.
    """

    def __init__(self, message: str, result: Any = None):
        super().__init__(message)
        self.result = result


class PoleError(RamanujanVerifyError):
    """An expression was evaluated at (or numerically on top of) one of its poles."""


class DomainError(RamanujanVerifyError):
    """An argument lies outside the domain where the requested quantity is defined."""


class DegenerateInput(RamanujanVerifyError):
    """Input makes a denominator vanish or collapses an identity to a tautology."""


class UnknownIdentity(RamanujanVerifyError, KeyError):
    """The requested identity id is not present in the registry."""

    def __str__(self) -> str:  # KeyError would otherwise repr() the message
        return str(self.args[0]) if self.args else "unknown identity"


class UsageError(DomainError):
    """Malformed request: unknown or ill-sized parameters, or overrides on a fixed instance."""
