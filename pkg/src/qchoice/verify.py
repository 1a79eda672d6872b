"""Statistical and algebraic self-check suites.

Each suite re-derives one of the package's founding facts from scratch —
Monte Carlo where the fact is distributional, exhaustive perturbation
where it is variational, random draws where it is an operator identity —
and reports an honest pass/fail against a fixed tolerance.  The CLI
exposes them under ``verify``; the test suite calls them directly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .attraction import ordered_uniform_gap_check, quarter_law_check
from .errors import ValidationError
from .quantum import (
    Prospect,
    normalize_prospect_set,
    prospect_probability,
    prospect_projector,
    random_density_operator,
    sample_inconclusive,
)
from .utility import (
    information_functional_gains,
    information_functional_losses,
    utility_factors_gains,
    utility_factors_losses,
)

QUARTER_LAW_TOL = 5e-3
GAP_SPREAD_TOL = 3e-3
ENTROPY_MARGIN_TOL = -1e-9
IDENTITY_TOL = 1e-12

SUITE_NAMES = ("quarter-law", "gaps", "entropy", "quantum-identity")


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one self-check suite."""

    suite: str
    passed: bool
    statistics: dict
    summary: str


def verify_quarter_law(samples: int = 1_000_000, seed: int = 0) -> SuiteResult:
    """Monte Carlo check that the typical attraction magnitude is 1/4."""
    estimate = quarter_law_check(samples, seed)
    deviation = abs(estimate - 0.25)
    passed = deviation <= QUARTER_LAW_TOL
    stats = {
        "samples": int(samples),
        "seed": int(seed),
        "estimate": float(estimate),
        "target": 0.25,
        "tolerance": QUARTER_LAW_TOL,
        "deviation": float(deviation),
    }
    return SuiteResult(
        suite="quarter-law",
        passed=passed,
        statistics=stats,
        summary=(
            f"mean positive attraction {estimate:.6f} vs 1/4 "
            f"(|dev| {deviation:.2e}, tol {QUARTER_LAW_TOL:.0e})"
        ),
    )


def verify_gaps(
    samples: int = 100_000, seed: int = 0, n_prospects: int = 5
) -> SuiteResult:
    """Check that ordered uniform draws have equal mean consecutive gaps."""
    gaps = ordered_uniform_gap_check(n_prospects, samples, seed)
    spread = float(np.max(gaps) - np.min(gaps))
    expected = 1.0 / (n_prospects + 1)
    worst = float(np.max(np.abs(gaps - expected)))
    passed = spread <= GAP_SPREAD_TOL
    stats = {
        "n_prospects": int(n_prospects),
        "samples": int(samples),
        "seed": int(seed),
        "mean_gaps": [float(g) for g in gaps],
        "spread": spread,
        "expected_gap": expected,
        "max_deviation_from_expected": worst,
        "tolerance": GAP_SPREAD_TOL,
    }
    return SuiteResult(
        suite="gaps",
        passed=passed,
        statistics=stats,
        summary=(
            f"{n_prospects - 1} mean gaps within spread {spread:.2e} of each "
            f"other (tol {GAP_SPREAD_TOL:.0e}); expected common value {expected:.4f}"
        ),
    )


def _perturbation_margin(
    rng: np.random.Generator,
    utilities: np.ndarray,
    exponent: float,
    perturbations: int,
    *,
    losses: bool,
) -> float:
    """Worst functional margin of random simplex points over the minimizer."""
    if losses:
        f_star = utility_factors_losses(list(utilities), exponent)
        i_star = information_functional_losses(f_star, list(utilities), 0.0, exponent)
        log_penalty = -np.log(np.abs(utilities))
        sign = -1.0
    else:
        f_star = utility_factors_gains(list(utilities), exponent)
        i_star = information_functional_gains(f_star, list(utilities), 0.0, exponent)
        log_penalty = -np.log(utilities)
        sign = 1.0
    points = rng.dirichlet(np.ones(utilities.size), size=perturbations)
    safe = np.where(points > 0.0, points, 1.0)  # 0 * log 0 -> 0
    entropy = np.sum(points * np.log(safe), axis=1)
    values = entropy + sign * exponent * (points @ log_penalty)
    return float(np.min(values) - i_star)


def verify_entropy(perturbations: int = 10_000, seed: int = 0, vectors: int = 20) -> SuiteResult:
    """Check the closed-form factors minimize their information functionals.

    For random utility vectors in each sign regime, no random simplex
    point may beat the closed form by more than numerical noise; and at
    unit exponents the closed forms must coincide with the plain ratio
    weightings exactly.
    """
    if vectors < 1 or perturbations < 1:
        raise ValidationError("vectors and perturbations must be >= 1")
    rng = np.random.default_rng(seed)
    worst = np.inf
    for _ in range(vectors):
        n = int(rng.integers(2, 7))
        utilities = rng.uniform(0.2, 5.0, n)
        alpha = float(rng.uniform(0.3, 2.5))
        gamma = float(rng.uniform(0.3, 2.5))
        worst = min(
            worst,
            _perturbation_margin(rng, utilities, alpha, perturbations, losses=False),
            _perturbation_margin(rng, -utilities, gamma, perturbations, losses=True),
        )

    # Unit exponents must reduce to the plain ratio forms, exactly.
    reduction_exact = True
    for _ in range(5):
        n = int(rng.integers(2, 7))
        u = rng.uniform(0.2, 5.0, n)
        gains = utility_factors_gains(list(u), 1)
        ratio = [x / float(np.sum(u)) for x in u]
        reduction_exact &= all(a == b for a, b in zip(gains, ratio))
        losses_f = utility_factors_losses(list(-u), 1)
        inv = [1 / x for x in u]
        ratio_l = [w / sum(inv) for w in inv]
        reduction_exact &= all(a == b for a, b in zip(losses_f, ratio_l))

    passed = worst >= ENTROPY_MARGIN_TOL and reduction_exact
    stats = {
        "vectors_per_regime": int(vectors),
        "perturbations": int(perturbations),
        "seed": int(seed),
        "worst_margin": float(worst),
        "margin_tolerance": ENTROPY_MARGIN_TOL,
        "unit_exponent_reduction_exact": bool(reduction_exact),
    }
    return SuiteResult(
        suite="entropy",
        passed=passed,
        statistics=stats,
        summary=(
            f"worst perturbation margin {worst:.3e} (must be >= {ENTROPY_MARGIN_TOL:.0e}); "
            f"unit-exponent reduction exact: {reduction_exact}"
        ),
    )


def verify_quantum_identity(
    draws: int = 1000, seed: int = 0, dims: tuple[int, int] = (4, 3)
) -> SuiteResult:
    """Random-state check of the probability split and its normalization.

    Every draw builds a random density operator and random inconclusive
    amplitudes, then checks |p - (f + q)| for each prospect, agreement
    of p with the independent full-matrix trace rule, and the sums of
    the normalized family (p to 1, f to 1, q to 0).
    """
    if draws < 1:
        raise ValidationError(f"draw count must be >= 1, got {draws}")
    n_dim, b_dim = dims
    rng = np.random.default_rng(seed)
    max_identity = 0.0
    max_trace_dev = 0.0
    max_p_sum = 0.0
    max_f_sum = 0.0
    max_q_sum = 0.0
    for _ in range(draws):
        rho = random_density_operator(n_dim * b_dim, rng)
        b = sample_inconclusive(b_dim, rng)
        prospects = [Prospect(n, b) for n in range(n_dim)]
        triples = [prospect_probability(rho, pr, (n_dim, b_dim)) for pr in prospects]
        for pr, t in zip(prospects, triples):
            max_identity = max(max_identity, abs(t.p - (t.f + t.q)))
            trace_p = prospect_projector(pr, n_dim, b_dim).expectation(rho)
            max_trace_dev = max(max_trace_dev, abs(trace_p - t.p))
        family = normalize_prospect_set(triples)
        max_p_sum = max(max_p_sum, abs(sum(t.p for t in family) - 1.0))
        max_f_sum = max(max_f_sum, abs(sum(t.f for t in family) - 1.0))
        max_q_sum = max(max_q_sum, abs(sum(t.q for t in family)))
    worst = max(max_identity, max_trace_dev, max_p_sum, max_f_sum, max_q_sum)
    passed = worst < IDENTITY_TOL
    stats = {
        "draws": int(draws),
        "seed": int(seed),
        "dims": [int(n_dim), int(b_dim)],
        "max_split_defect": float(max_identity),
        "max_trace_rule_deviation": float(max_trace_dev),
        "max_p_sum_defect": float(max_p_sum),
        "max_f_sum_defect": float(max_f_sum),
        "max_q_sum_defect": float(max_q_sum),
        "tolerance": IDENTITY_TOL,
    }
    return SuiteResult(
        suite="quantum-identity",
        passed=passed,
        statistics=stats,
        summary=(
            f"worst defect {worst:.3e} over {draws} draws at dims {dims} "
            f"(tol {IDENTITY_TOL:.0e})"
        ),
    )


def run_suite(name: str, samples: int | None = None, seed: int = 0) -> SuiteResult:
    """Run one named suite; ``samples`` maps to its sampling knob."""
    if name == "quarter-law":
        return verify_quarter_law(samples if samples is not None else 1_000_000, seed)
    if name == "gaps":
        return verify_gaps(samples if samples is not None else 100_000, seed)
    if name == "entropy":
        return verify_entropy(samples if samples is not None else 10_000, seed)
    if name == "quantum-identity":
        return verify_quantum_identity(samples if samples is not None else 1000, seed)
    raise ValidationError(
        f"unknown verification suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
    )
