"""Composite choice prediction: utility factors plus quantized attraction.

The pipeline is deliberately small.  Given utility factors ``f`` for N
competing prospects and a ranking of the prospects by attractiveness,
each prospect receives the matching rung of the quantized attraction
ladder (most attractive gets the top rung), the values are clipped into
their admissible ranges while keeping their zero sum, and the predicted
choice probabilities are ``p = f + q``.  A regularity check then asks
whether attraction overturned the utility ordering — the signature of a
decoy effect.

All arithmetic is plain scalar Python: feed ``Fraction`` utility factors
in and the predictions come out as exact rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .attraction import quantized_attraction_set
from .errors import InfeasibleBoundsError, ValidationError

_SUM_TOL = 1e-9
_EMPIRICAL_SUM_TOL = 2e-2
_RESIDUAL_EPS = 1e-12


def _check_real(value, *, what: str):
    try:
        as_float = float(value)
    except (TypeError, OverflowError) as exc:
        raise ValidationError(f"{what} must be a real number, got {value!r}") from exc
    if not math.isfinite(as_float):
        raise ValidationError(f"{what} must be finite, got {value!r}")
    return value


def _check_unit_interval(values: Sequence, *, what: str) -> None:
    for v in values:
        _check_real(v, what=what)
        if float(v) < -_SUM_TOL or float(v) > 1.0 + _SUM_TOL:
            raise ValidationError(f"{what} {v!r} outside [0, 1]")


def _check_sum(values: Sequence, target: float, *, what: str, tol: float = _SUM_TOL) -> None:
    total = sum(values)
    if isinstance(total, Fraction):
        # Keep the deviation exact so rational inputs sitting right on the
        # tolerance boundary are not pushed over it by float rounding.
        deviation = abs(total - Fraction(target))
    else:
        deviation = abs(float(total) - target)
    if deviation > tol:
        raise ValidationError(
            f"{what} must sum to {target} within {tol:.0e}, got {float(total)!r}"
        )


@dataclass(frozen=True)
class ChoiceSet:
    """N competing prospects: ids, utility factors, attractiveness ranking.

    ``attractiveness_rank`` lists the prospect ids from most to least
    attractive and must be a permutation of ``prospect_ids``.
    """

    prospect_ids: tuple[str, ...]
    utility_factors: tuple
    attractiveness_rank: tuple[str, ...]

    def __post_init__(self) -> None:
        ids = tuple(str(i) for i in self.prospect_ids)
        factors = tuple(self.utility_factors)
        rank = tuple(str(i) for i in self.attractiveness_rank)
        if len(ids) == 0:
            raise ValidationError("choice set needs at least one prospect")
        if len(set(ids)) != len(ids):
            raise ValidationError(f"prospect ids must be unique, got {ids}")
        if len(factors) != len(ids):
            raise ValidationError(
                f"{len(ids)} prospects but {len(factors)} utility factors"
            )
        _check_unit_interval(factors, what="utility factor")
        _check_sum(factors, 1.0, what="utility factors")
        if sorted(rank) != sorted(ids):
            raise ValidationError(
                f"attractiveness rank {rank} is not a permutation of ids {ids}"
            )
        object.__setattr__(self, "prospect_ids", ids)
        object.__setattr__(self, "utility_factors", factors)
        object.__setattr__(self, "attractiveness_rank", rank)

    @property
    def n_prospects(self) -> int:
        return len(self.prospect_ids)


@dataclass(frozen=True)
class PredictionReport:
    """Predicted choice probabilities with their additive decomposition.

    Per prospect (aligned tuples): utility factor ``f``, attraction
    ``q`` after bounds enforcement, probability ``p = f + q``.  The
    empirical fields are attached by ``score_against_empirical`` and stay
    ``None`` until then.
    """

    prospect_ids: tuple[str, ...]
    utility_factors: tuple
    attraction_factors: tuple
    probabilities: tuple
    clamping_applied: bool
    empirical: tuple | None = None
    abs_errors: tuple | None = None
    max_abs_error: object | None = None
    mean_abs_error: object | None = None

    def __post_init__(self) -> None:
        ids = tuple(str(i) for i in self.prospect_ids)
        f = tuple(self.utility_factors)
        q = tuple(self.attraction_factors)
        p = tuple(self.probabilities)
        if not (len(ids) == len(f) == len(q) == len(p)):
            raise ValidationError("report columns must have equal length")
        if len(ids) == 0:
            raise ValidationError("report needs at least one prospect")
        _check_unit_interval(f, what="utility factor")
        _check_unit_interval(p, what="probability")
        _check_sum(f, 1.0, what="utility factors")
        _check_sum(p, 1.0, what="probabilities")
        _check_sum(q, 0.0, what="attraction factors")
        object.__setattr__(self, "prospect_ids", ids)
        object.__setattr__(self, "utility_factors", f)
        object.__setattr__(self, "attraction_factors", q)
        object.__setattr__(self, "probabilities", p)
        if self.empirical is not None:
            emp = tuple(self.empirical)
            if len(emp) != len(ids):
                raise ValidationError("empirical frequencies must match prospects")
            object.__setattr__(self, "empirical", emp)
        if self.abs_errors is not None:
            errs = tuple(self.abs_errors)
            if len(errs) != len(ids):
                raise ValidationError("error column must match prospects")
            object.__setattr__(self, "abs_errors", errs)

    @property
    def n_prospects(self) -> int:
        return len(self.prospect_ids)


@dataclass(frozen=True)
class RegularityCheck:
    """Outcome of comparing the utility leader against the overall leader.

    ``reversal`` is True when attraction strictly overturned the utility
    ordering.  Ties at either argmax are never counted as reversals;
    they set ``tie`` instead.  Truthiness follows ``reversal``.
    """

    reversal: bool
    tie: bool
    favored_by_utility: int
    favored_overall: int

    def __bool__(self) -> bool:
        return self.reversal


def enforce_bounds(
    utility_factors: Sequence,
    attraction_factors: Sequence,
) -> tuple[list, bool]:
    """Clip attraction values into ``[-f_n, 1 - f_n]`` keeping a zero sum.

    Out-of-range values are clamped to the violated bound and the
    leftover is redistributed in equal shares over the prospects that
    were not clamped; the cycle repeats if the redistribution pushes a
    new value out of range.  Already-admissible inputs pass through
    unchanged (the procedure is idempotent).  Returns the adjusted
    values and a flag telling whether any clamping happened.  Raises
    ``InfeasibleBoundsError`` when every value is pinned and the sum
    still cannot reach zero.
    """
    f = list(utility_factors)
    q = list(attraction_factors)
    if len(f) != len(q):
        raise ValidationError(
            f"factor length mismatch: {len(f)} utility vs {len(q)} attraction"
        )
    if len(f) == 0:
        raise ValidationError("bounds enforcement needs at least one prospect")
    _check_unit_interval(f, what="utility factor")
    _check_sum(f, 1.0, what="utility factors")
    for v in q:
        _check_real(v, what="attraction factor")
    _check_sum(q, 0.0, what="attraction factors")

    n = len(f)
    lo = [-x for x in f]
    hi = [1 - x for x in f]
    pinned = [False] * n
    clamped_any = False
    eps = _RESIDUAL_EPS * n

    for _ in range(n + 2):
        for i in range(n):
            if pinned[i]:
                continue
            if q[i] < lo[i]:
                q[i] = lo[i]
                pinned[i] = True
                clamped_any = True
            elif q[i] > hi[i]:
                q[i] = hi[i]
                pinned[i] = True
                clamped_any = True
        residual = -sum(q)
        if residual == 0 or abs(float(residual)) <= eps:
            break
        free = [i for i in range(n) if not pinned[i]]
        if not free:
            raise InfeasibleBoundsError(
                f"all {n} attraction values are pinned at their bounds but the "
                f"sum misses zero by {float(residual)!r}"
            )
        share = residual / len(free)
        for i in free:
            q[i] = q[i] + share
    else:
        raise InfeasibleBoundsError(
            "bounds enforcement did not settle; inputs violate the "
            "probability constraints in an unrecoverable way"
        )

    for i in range(n):
        if float(q[i]) < float(lo[i]) - _SUM_TOL or float(q[i]) > float(hi[i]) + _SUM_TOL:
            raise InfeasibleBoundsError(
                f"adjusted attraction {q[i]!r} escaped its bounds "
                f"[{lo[i]!r}, {hi[i]!r}]"
            )
    _check_sum(q, 0.0, what="adjusted attraction factors")
    return q, clamped_any


def compose_probabilities(choice_set: ChoiceSet) -> PredictionReport:
    """Predict ``p = f + q`` with the quantized ladder assigned by rank.

    The most attractive prospect receives the top rung of the ladder for
    ``N`` prospects, the next one the second rung, and so on; the values
    are then clipped into their admissible ranges (zero sum preserved).
    """
    ladder = quantized_attraction_set(choice_set.n_prospects).values
    rung_of = {pid: ladder[k] for k, pid in enumerate(choice_set.attractiveness_rank)}
    q_raw = [rung_of[pid] for pid in choice_set.prospect_ids]
    q_adj, clamped = enforce_bounds(choice_set.utility_factors, q_raw)
    p = [f_n + q_n for f_n, q_n in zip(choice_set.utility_factors, q_adj)]
    return PredictionReport(
        prospect_ids=choice_set.prospect_ids,
        utility_factors=choice_set.utility_factors,
        attraction_factors=tuple(q_adj),
        probabilities=tuple(p),
        clamping_applied=clamped,
    )


def predict_decoy(
    f_no_decoy: Sequence,
    decoy_target_rank: Sequence,
    prospect_ids: Sequence[str] | None = None,
) -> PredictionReport:
    """Predict how a decoy shifts choice among the competing prospects.

    ``f_no_decoy`` holds the utility factors of the *competing*
    prospects only — the decoy, being strictly dominated, is assumed to
    draw (essentially) no choices itself and enters purely through
    ``decoy_target_rank``: the attractiveness ordering it induces, most
    attractive first, given as ids or as 0-based positions into
    ``f_no_decoy``.  To model a decoy that retains genuine choice share,
    include it as a prospect of its own with its utility factor and
    rank.
    """
    f = tuple(f_no_decoy)
    if prospect_ids is None:
        ids = tuple(f"P{k + 1}" for k in range(len(f)))
    else:
        ids = tuple(str(i) for i in prospect_ids)
    rank_items = list(decoy_target_rank)
    rank: list[str] = []
    for item in rank_items:
        if isinstance(item, bool):
            raise ValidationError(f"rank entries must be ids or indices, got {item!r}")
        if isinstance(item, int):
            if not 0 <= item < len(ids):
                raise ValidationError(
                    f"rank index {item} out of range for {len(ids)} prospects"
                )
            rank.append(ids[item])
        else:
            rank.append(str(item))
    choice_set = ChoiceSet(
        prospect_ids=ids, utility_factors=f, attractiveness_rank=tuple(rank)
    )
    return compose_probabilities(choice_set)


def score_against_empirical(
    report: PredictionReport,
    empirical: Sequence | Mapping[str, object],
) -> PredictionReport:
    """Attach observed choice frequencies and absolute errors to a report.

    ``empirical`` is either a sequence aligned with the report's
    prospects or a mapping from prospect id to frequency.  Frequencies
    must be non-negative and sum to 1 within 2e-2 (empirical vectors in
    the literature are rounded).  Exact inputs give exact errors.
    """
    if isinstance(empirical, Mapping):
        missing = [pid for pid in report.prospect_ids if pid not in empirical]
        if missing:
            raise ValidationError(
                f"empirical frequencies missing for prospects: {missing}"
            )
        extra = [pid for pid in empirical if pid not in report.prospect_ids]
        if extra:
            raise ValidationError(
                f"empirical frequencies name unknown prospects: {extra}"
            )
        freqs = tuple(empirical[pid] for pid in report.prospect_ids)
    else:
        freqs = tuple(empirical)
        if len(freqs) != report.n_prospects:
            raise ValidationError(
                f"{report.n_prospects} prospects but {len(freqs)} empirical values"
            )
    for v in freqs:
        _check_real(v, what="empirical frequency")
        if v < 0:
            raise ValidationError(f"empirical frequency {v!r} is negative")
    _check_sum(freqs, 1.0, what="empirical frequencies", tol=_EMPIRICAL_SUM_TOL)
    errors = tuple(abs(p - e) for p, e in zip(report.probabilities, freqs))
    return replace(
        report,
        empirical=freqs,
        abs_errors=errors,
        max_abs_error=max(errors),
        mean_abs_error=sum(errors) / len(errors),
    )


def regularity_violation_check(
    utility_factors: Sequence,
    probabilities: Sequence,
) -> RegularityCheck:
    """Did attraction overturn the utility ordering?

    Compares the argmax of the utility factors with the argmax of the
    final probabilities.  A strict difference is a reversal — the
    regularity-axiom violation a decoy produces.  If either vector has
    a tied maximum the comparison is ambiguous: no reversal is claimed
    and the tie is flagged.
    """
    f = tuple(utility_factors)
    p = tuple(probabilities)
    if len(f) != len(p):
        raise ValidationError(f"length mismatch: {len(f)} vs {len(p)}")
    if len(f) == 0:
        raise ValidationError("regularity check needs at least one prospect")
    _check_unit_interval(f, what="utility factor")
    _check_unit_interval(p, what="probability")
    _check_sum(f, 1.0, what="utility factors")
    _check_sum(p, 1.0, what="probabilities")

    f_max, p_max = max(f), max(p)
    f_arg, p_arg = f.index(f_max), p.index(p_max)
    tie = sum(1 for v in f if v == f_max) > 1 or sum(1 for v in p if v == p_max) > 1
    reversal = (not tie) and f_arg != p_arg
    return RegularityCheck(
        reversal=reversal, tie=tie, favored_by_utility=f_arg, favored_overall=p_arg
    )
