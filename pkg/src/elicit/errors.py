"""Exception hierarchy shared by the whole engine.

Every error carries a stable machine-readable ``code`` so the HTTP service
and the CLI can map failures one-to-one onto API error payloads and exit
codes without string matching.
"""

from __future__ import annotations

from typing import Any


class ElicitError(Exception):
    """Base class for all engine errors."""

    code = "internal-error"

    def __init__(self, message: str, *, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class DomainError(ElicitError):
    """An argument is outside the mathematical domain of an operation."""

    code = "domain-error"


class InvalidJudgementError(ElicitError):
    """Elicited values violate an ordering or range requirement."""

    code = "invalid-judgement"


class InvalidTransformError(ElicitError):
    """Unknown transform tag."""

    code = "invalid-transform"


class FitFailureError(ElicitError):
    """The optimizer could not satisfy the fitting constraints.

    Carries the best parameters seen and the residual they achieve, so a
    caller can inspect how close the fit came.
    """

    code = "fit-failure"

    def __init__(
        self,
        message: str,
        *,
        params: tuple[float, ...] | None = None,
        residual: float | None = None,
        details: dict[str, Any] | None = None,
    ):
        merged = dict(details or {})
        if params is not None:
            merged["params"] = list(params)
        if residual is not None:
            merged["residual"] = residual
        super().__init__(message, details=merged)
        self.params = params
        self.residual = residual


class StateError(ElicitError):
    """A session operation was attempted in a state that does not allow it."""

    code = "state-error"


class SessionNotFoundError(ElicitError):
    """No stored session with the requested id."""

    code = "session-not-found"


class DocumentParseError(ElicitError):
    """A session document could not be parsed; ``details['location']`` says where."""

    code = "parse-error"


class DocumentValidationError(ElicitError):
    """A parsed session document violates an invariant; the message names it."""

    code = "validation-error"
