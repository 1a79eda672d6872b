"""Predicting decoy-driven preference reversals, exactly.

Two real studies ship with the package as .exp files.  In both, option A
beats option B on measured utility, yet subjects picked B once a decoy
made B the most attractive item on display.  The model adds the quantized
attraction ladder on top of the utility factors and gets both flips, one
of them to the third decimal place.  Everything below is exact rational
arithmetic -- run it and diff the fractions.
"""
from fractions import Fraction

from qchoice import (
    bundled_experiment,
    list_bundled_experiments,
    predict_decoy,
    regularity_violation_check,
    run_prediction,
)

print("bundled studies:", ", ".join(list_bundled_experiments()))
print()

for name in ("microwave", "frogs"):
    exp = bundled_experiment(name)
    report = run_prediction(exp)
    print(f"--- {exp.name} ---")
    print(f"{'prospect':<14}{'f':>10}{'q':>10}{'p':>10}{'observed':>12}{'|err|':>10}")
    for k, pid in enumerate(exp.prospect_ids):
        print(
            f"{pid:<14}{str(report.utility_factors[k]):>10}"
            f"{str(report.attraction_factors[k]):>10}"
            f"{str(report.probabilities[k]):>10}"
            f"{str(report.empirical[k]):>12}"
            f"{str(report.abs_errors[k]):>10}"
        )
    check = regularity_violation_check(report.utility_factors, report.probabilities)
    leader = exp.prospect_ids[check.favored_by_utility]
    winner = exp.prospect_ids[check.favored_overall]
    print(f"utility favored {leader!r}; predicted choice goes to {winner!r}")
    print(f"reversal: {check.reversal},  max |error| = {report.max_abs_error}")
    print()

print("--- where does the reversal threshold sit? ---")
print("two prospects, the decoy pointing at the utility minority:")
print(f"{'f_minority':>12} {'p_minority':>12}  outcome")
for f_minor in (Fraction(1, 10), Fraction(1, 5), Fraction(1, 4), Fraction(3, 10), Fraction(2, 5)):
    report = predict_decoy((f_minor, 1 - f_minor), (0, 1))
    check = regularity_violation_check(report.utility_factors, report.probabilities)
    if check.tie:
        outcome = "dead tie"
    elif check.reversal:
        outcome = "REVERSAL"
    else:
        outcome = "no flip"
    print(f"{str(f_minor):>12} {str(report.probabilities[0]):>12}  {outcome}")
print("the +1/4 rung flips anything above f = 1/4; exactly 1/4 lands on a tie")

print()
print("--- a decoy that keeps real choice share ---")
print("model it as a third prospect ranked most attractive:")
report = predict_decoy(
    (Fraction(9, 20), Fraction(1, 2), Fraction(1, 20)),
    ("decoy", "A", "B"),
    prospect_ids=("A", "B", "decoy"),
)
for pid, f, q, p in zip(
    report.prospect_ids,
    report.utility_factors,
    report.attraction_factors,
    report.probabilities,
):
    print(f"  {pid:<8} f = {str(f):<6} q = {str(q):<7} p = {str(p)}")
print(f"probabilities still sum to {sum(report.probabilities)} exactly")
