"""The attraction factors are quantized: fixed ladders, gap laws, and 1/4.

Without specific information about a subject, the interference term q for
each of N prospects can only take one of N evenly spaced values summing
to zero -- a ladder.  The ladder gap and top rung follow closed forms with
an even/odd split, the mean magnitude of every ladder is exactly 1/4, and
that same 1/4 shows up as the Monte Carlo average of the positive part of
a uniform attraction draw.  All of it is checked live below.
"""
from fractions import Fraction

import numpy as np

from qchoice import (
    attraction_gap,
    attraction_qmax,
    ordered_uniform_gap_check,
    quantized_attraction_set,
    quarter_law_check,
)

print("ladders for small N (top rung first):")
for n in range(1, 7):
    ladder = quantized_attraction_set(n)
    shown = "  ".join(str(v) for v in ladder.values)
    print(f"  N={n}:  {shown}")

print()
print("closed forms, with the even/odd split:")
print(f"{'N':>4} {'gap':>12} {'top rung':>12} {'mean |q|':>10}")
for n in (2, 3, 4, 5, 10, 11, 100, 101):
    ladder = quantized_attraction_set(n)
    mean_abs = sum(abs(v) for v in ladder.values) / n
    print(f"{n:>4} {str(attraction_gap(n)):>12} {str(attraction_qmax(n)):>12} {str(mean_abs):>10}")
assert all(
    sum(abs(v) for v in quantized_attraction_set(n).values) / n == Fraction(1, 4)
    for n in range(2, 300)
)
print("mean |q| is exactly 1/4 for every ladder (checked through N=299)")

print()
print("the quarter law, the Monte Carlo way:")
print("draw q ~ U[-1, 1]; average the positive part (negatives count as 0)")
for samples in (1_000, 100_000, 10_000_000):
    estimate = quarter_law_check(samples, seed=0)
    print(f"  {samples:>10,} samples -> {estimate:.6f}   (|dev| {abs(estimate - 0.25):.2e})")
print("converges to 1/4, matching the exact ladder mean above")

print()
print("why evenly spaced?  order statistics of uniform draws:")
print("sort N uniform draws descending; every mean consecutive gap is 1/(N+1)")
for n in (3, 5, 8):
    gaps = ordered_uniform_gap_check(n, 200_000, seed=1)
    text = " ".join(f"{g:.4f}" for g in gaps)
    print(f"  N={n}: mean gaps [{text}]  expected {1 / (n + 1):.4f}")

print()
print("large-N behavior of the relative rung positions:")
n = 10_000
ladder = quantized_attraction_set(n)
top, second = ladder.values[0], ladder.values[1]
print(f"  N={n}: top rung {float(top):.6f} -> 1/2,  gap {float(top - second):.2e} -> 0")
print("the ladder densifies into the continuum it was cut from")
