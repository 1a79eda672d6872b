"""Exception hierarchy shared across the package.

Everything raised on purpose derives from :class:`QChoiceError`, so callers
can catch one base class.  Input-validation problems additionally derive
from :class:`ValueError` to stay friendly to generic error handling.
"""
from __future__ import annotations


class QChoiceError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(QChoiceError, ValueError):
    """An input violates a documented precondition."""


class NormalizationError(ValidationError):
    """A vector or distribution that must be normalized is not."""


class SignDomainError(ValidationError):
    """Utilities fall in the wrong sign domain for the requested rule.

    The gains rule needs non-negative utilities, the losses rule strictly
    negative ones; mixed-sign inputs fit neither and are rejected rather
    than silently split.
    """


class DegenerateSetError(ValidationError):
    """A set of values is degenerate (e.g. all zero) and carries no signal."""


class InfeasibleBoundsError(QChoiceError):
    """Attraction values cannot be reconciled with their probability bounds."""


class ExperimentFormatError(QChoiceError, ValueError):
    """An experiment description file is malformed or inconsistent."""


class VerificationFailure(QChoiceError):
    """A self-check suite ran to completion but a statistic missed its target."""
