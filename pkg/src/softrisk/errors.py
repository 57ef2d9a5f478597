"""Exception hierarchy with stable machine codes.

Every domain error carries a ``code`` string that the HTTP layer and the CLI
surface verbatim, so callers can match on codes instead of parsing messages.
"""

from __future__ import annotations

from typing import Any, Optional


class ElicitationError(Exception):
    """Base class for all domain errors raised by this package."""

    code: str = "ELICITATION_ERROR"

    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message)
        self.details = details


class OrderViolation(ElicitationError, ValueError):
    """Elicited points are not strictly ordered (requires low < median < high)."""

    code = "ORDER_VIOLATION"


class PhiOutOfRange(ElicitationError, ValueError):
    """Sharpness parameter phi must lie in (0, 1]."""

    code = "PHI_OUT_OF_RANGE"


class NonFinite(ElicitationError, ValueError):
    """A numeric input was NaN or infinite."""

    code = "NON_FINITE"


class QOutOfRange(ElicitationError, ValueError):
    """Quantile argument outside [0, 1]."""

    code = "Q_OUT_OF_RANGE"


class BadCount(ElicitationError, ValueError):
    """Sample count must be at least 1."""

    code = "BAD_COUNT"


class XOutOfRange(ElicitationError, ValueError):
    """Evaluation point outside the distribution's legal domain."""

    code = "X_OUT_OF_RANGE"


class GridTooCoarse(ElicitationError, ValueError):
    """Grid resolution below the supported minimum (64 points)."""

    code = "GRID_TOO_COARSE"


class InvalidDistribution(ElicitationError, ValueError):
    """Distribution parameters outside their legal domain, or unknown kind."""

    code = "INVALID_DISTRIBUTION"


class EmptyPanel(ElicitationError, ValueError):
    """An aggregation was requested over zero expert estimates."""

    code = "EMPTY_PANEL"


class NonPositiveWeight(ElicitationError, ValueError):
    """Expert weights must be strictly positive."""

    code = "NON_POSITIVE_WEIGHT"


class NegativeSupport(ElicitationError, ValueError):
    """Product factors must have non-negative support."""

    code = "NEGATIVE_SUPPORT"


class UnsortedGrid(ElicitationError, ValueError):
    """An evaluation grid was not sorted ascending."""

    code = "UNSORTED_GRID"


class NonMonotoneCDF(ElicitationError, ValueError):
    """CDF samples decrease by more than the tolerance (1e-9)."""

    code = "NON_MONOTONE_CDF"


class SchemaError(ElicitationError, ValueError):
    """A JSON document does not match the expected schema."""

    code = "INVALID_DOCUMENT"


class NoQuestions(ElicitationError, ValueError):
    """A session needs at least one question."""

    code = "NO_QUESTIONS"


class InvalidQuestion(ElicitationError, ValueError):
    """Question bounds or fields are malformed."""

    code = "INVALID_QUESTION"


class UnknownSession(ElicitationError, KeyError):
    """No session with the given id."""

    code = "UNKNOWN_SESSION"


class UnknownQuestion(ElicitationError, KeyError):
    """No question with the given id in this session."""

    code = "UNKNOWN_QUESTION"


class SessionClosed(ElicitationError):
    """Mutation attempted on a closed session."""

    code = "SESSION_CLOSED"


class BoundsViolation(ElicitationError, ValueError):
    """Estimate or factor support falls outside the allowed bounds."""

    code = "BOUNDS_VIOLATION"


class NoEstimates(ElicitationError, ValueError):
    """Aggregation requested for a question with no submitted estimates."""

    code = "NO_ESTIMATES"
