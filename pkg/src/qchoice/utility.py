"""Expected utilities and non-informative-prior utility factors.

The classical part of a choice probability — the utility factor — orders
prospects by expected utility.  When nothing is known about the agent
beyond those utilities, minimizing an information functional (entropy
plus a normalization multiplier plus a log-utility constraint) fixes the
factors in closed form:

* gains (all utilities non-negative): ``f_n`` proportional to ``U_n ** alpha``;
* losses (all utilities strictly negative): ``f_n`` proportional to
  ``|U_n| ** -gamma`` — the *least bad* option gets the largest factor.

Both exponents default to 1, which reduces the gains rule to simple
ratio-of-utilities weighting.  Exact inputs (ints, Fractions) pass
through exactly when the exponent is 1 or an integer; the functionals
themselves are evaluated in floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import Sequence

from .errors import DegenerateSetError, SignDomainError, ValidationError

_PROB_SUM_TOL = 1e-9


def _check_finite(value, *, what: str) -> None:
    if isinstance(value, float) and not math.isfinite(value):
        raise ValidationError(f"{what} must be finite, got {value!r}")


@dataclass(frozen=True)
class Lottery:
    """A finite lottery: payoffs with their probabilities.

    Probabilities must be non-negative and sum to 1 within 1e-9.
    """

    payoffs: tuple
    probs: tuple

    def __post_init__(self) -> None:
        payoffs = tuple(self.payoffs)
        probs = tuple(self.probs)
        if len(payoffs) == 0:
            raise ValidationError("a lottery needs at least one payoff")
        if len(payoffs) != len(probs):
            raise ValidationError(
                f"payoff/probability length mismatch: {len(payoffs)} vs {len(probs)}"
            )
        for x in payoffs:
            _check_finite(x, what="payoff")
        for pr in probs:
            _check_finite(pr, what="probability")
            if pr < 0:
                raise ValidationError(f"probabilities must be non-negative, got {pr!r}")
        total = sum(probs)
        if abs(total - 1) > _PROB_SUM_TOL:
            raise ValidationError(
                f"lottery probabilities must sum to 1 within {_PROB_SUM_TOL:.0e}, "
                f"got {float(total)!r}"
            )
        object.__setattr__(self, "payoffs", payoffs)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def certain(cls, payoff) -> "Lottery":
        """Degenerate lottery paying ``payoff`` with certainty."""
        return cls((payoff,), (1,))


@dataclass(frozen=True)
class UtilityFunction:
    """Utility of a single payoff: linear, or sign-preserving power.

    ``power`` applies ``sign(x) * |x| ** exponent``, keeping gains gains
    and losses losses for any positive exponent.
    """

    kind: str = "linear"
    exponent: Real = 1

    def __post_init__(self) -> None:
        if self.kind not in ("linear", "power"):
            raise ValidationError(
                f"utility kind must be 'linear' or 'power', got {self.kind!r}"
            )
        _check_finite(self.exponent, what="utility exponent")
        if self.exponent <= 0:
            raise ValidationError(
                f"utility exponent must be positive, got {self.exponent!r}"
            )

    def __call__(self, x):
        _check_finite(x, what="payoff")
        if self.kind == "linear":
            return x
        if x == 0:
            return 0
        magnitude = abs(x) ** self.exponent
        return magnitude if x > 0 else -magnitude

    @classmethod
    def linear(cls) -> "UtilityFunction":
        return cls(kind="linear")

    @classmethod
    def power(cls, exponent: Real) -> "UtilityFunction":
        return cls(kind="power", exponent=exponent)


LINEAR_UTILITY = UtilityFunction.linear()


@dataclass(frozen=True)
class UtilityFactorConfig:
    """Exponents of the two closed-form factor rules (both default to 1)."""

    alpha: Real = 1
    gamma: Real = 1

    def __post_init__(self) -> None:
        _check_finite(self.alpha, what="alpha")
        _check_finite(self.gamma, what="gamma")
        if self.alpha <= 0:
            raise ValidationError(f"alpha must be positive, got {self.alpha!r}")
        if self.gamma <= 0:
            raise ValidationError(f"gamma must be positive, got {self.gamma!r}")


def expected_utility(lottery: Lottery, utility: UtilityFunction = LINEAR_UTILITY):
    """Probability-weighted utility of a lottery.

    Exact for exact payoffs/probabilities under the linear utility.
    """
    return sum(pr * utility(x) for x, pr in zip(lottery.payoffs, lottery.probs))


def _validated_utilities(utilities: Sequence, *, what: str) -> tuple:
    values = tuple(utilities)
    if len(values) == 0:
        raise ValidationError(f"{what} must contain at least one utility")
    for u in values:
        _check_finite(u, what="utility")
    return values


def utility_factors_gains(utilities: Sequence, alpha: Real = 1) -> list:
    """Closed-form utility factors for non-negative expected utilities.

    ``f_n = U_n**alpha / sum_m U_m**alpha`` with ``alpha > 0``.  A zero
    utility yields a zero factor; an all-zero family carries no signal
    and is rejected, as is any negative utility (use the losses rule).
    Exact inputs stay exact when ``alpha`` is 1 or a positive integer.
    """
    values = _validated_utilities(utilities, what="gains utilities")
    _check_finite(alpha, what="alpha")
    if alpha <= 0:
        raise ValidationError(f"alpha must be positive, got {alpha!r}")
    for u in values:
        if u < 0:
            raise SignDomainError(
                f"gains rule needs non-negative utilities, got {u!r}"
            )
    if all(u == 0 for u in values):
        raise DegenerateSetError(
            "all utilities are zero; the gains rule cannot rank them"
        )
    if alpha == 1:
        weights = list(values)
    else:
        weights = [u ** alpha for u in values]
    total = sum(weights)
    return [w / total for w in weights]


def utility_factors_losses(utilities: Sequence, gamma: Real = 1) -> list:
    """Closed-form utility factors for strictly negative expected utilities.

    ``f_n = |U_n|**(-gamma) / sum_m |U_m|**(-gamma)`` with ``gamma > 0``:
    the smallest loss in magnitude receives the largest factor.  Any
    non-negative utility is rejected — mixed-sign families fit neither
    rule and are not silently split.
    """
    values = _validated_utilities(utilities, what="losses utilities")
    _check_finite(gamma, what="gamma")
    if gamma <= 0:
        raise ValidationError(f"gamma must be positive, got {gamma!r}")
    for u in values:
        if u >= 0:
            raise SignDomainError(
                f"losses rule needs strictly negative utilities, got {u!r}"
            )
    if gamma == 1:
        weights = [1 / abs(u) for u in values]
    else:
        weights = [abs(u) ** (-gamma) for u in values]
    total = sum(weights)
    return [w / total for w in weights]


def _xlogx(value: float) -> float:
    # 0 * log 0 -> 0 by continuity.
    if value == 0.0:
        return 0.0
    return value * math.log(value)


def _validated_factors(factors: Sequence) -> list[float]:
    values = [float(f) for f in factors]
    if len(values) == 0:
        raise ValidationError("factor vector must contain at least one entry")
    for f in values:
        if not math.isfinite(f):
            raise ValidationError(f"factors must be finite, got {f!r}")
        if f < 0.0:
            raise ValidationError(f"factors must be non-negative, got {f!r}")
    return values


def information_functional_gains(
    factors: Sequence,
    utilities: Sequence,
    lam: float = 0.0,
    alpha: float = 1.0,
    baseline: float = 0.0,
) -> float:
    """Information functional whose minimizer is the gains factor rule.

    ``sum f ln f + lam * (sum f - 1) + alpha * (sum f * L - baseline)``
    with log-penalties ``L_n = -ln U_n``.  ``baseline`` is the constant
    the log-penalty average is anchored to; it shifts the value but not
    the minimizer, and defaults to 0.  A zero utility carries an infinite
    penalty: if its factor is positive the functional is ``math.inf``,
    while a zero factor silences the term.
    """
    f = _validated_factors(factors)
    values = _validated_utilities(utilities, what="gains utilities")
    if len(f) != len(values):
        raise ValidationError(
            f"factor/utility length mismatch: {len(f)} vs {len(values)}"
        )
    for u in values:
        if u < 0:
            raise SignDomainError(
                f"gains functional needs non-negative utilities, got {u!r}"
            )
    penalty = 0.0
    for f_n, u in zip(f, values):
        if u == 0:
            if f_n > 0.0:
                return math.inf
            continue  # 0 weight on an infinite penalty contributes nothing
        penalty += f_n * (-math.log(float(u)))
    entropy = sum(_xlogx(f_n) for f_n in f)
    return (
        entropy
        + float(lam) * (sum(f) - 1.0)
        + float(alpha) * (penalty - float(baseline))
    )


def information_functional_losses(
    factors: Sequence,
    utilities: Sequence,
    lam: float = 0.0,
    gamma: float = 1.0,
    baseline: float = 0.0,
) -> float:
    """Information functional whose minimizer is the losses factor rule.

    Same structure as the gains functional but the log-penalty term
    enters with the opposite sign,
    ``sum f ln f + lam * (sum f - 1) + gamma * (baseline - sum f * L)``
    with ``L_n = -ln |U_n|``, which is what flips the minimizer to
    ``f_n`` proportional to ``|U_n| ** -gamma``.
    """
    f = _validated_factors(factors)
    values = _validated_utilities(utilities, what="losses utilities")
    if len(f) != len(values):
        raise ValidationError(
            f"factor/utility length mismatch: {len(f)} vs {len(values)}"
        )
    for u in values:
        if u >= 0:
            raise SignDomainError(
                f"losses functional needs strictly negative utilities, got {u!r}"
            )
    penalty = sum(
        f_n * (-math.log(abs(float(u)))) for f_n, u in zip(f, values)
    )
    entropy = sum(_xlogx(f_n) for f_n in f)
    return (
        entropy
        + float(lam) * (sum(f) - 1.0)
        + float(gamma) * (float(baseline) - penalty)
    )
