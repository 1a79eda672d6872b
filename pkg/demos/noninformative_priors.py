"""Where the utility factors come from when you refuse to assume a prior.

With no information beyond the utilities themselves, the factor vector f
should minimize an entropy-plus-utility-cost functional.  The minimizer
has a closed form: proportional to U^alpha for gains, and to |U|^(-gamma)
for losses (worse losses get LESS weight -- people discount disasters).
This script evaluates the functional on a grid around the closed form to
show it really is the minimum, then plays with the exponents.
"""
import numpy as np

from qchoice import (
    information_functional_gains,
    information_functional_losses,
    utility_factors_gains,
    utility_factors_losses,
)

rng = np.random.default_rng(7)

print("gains: utilities (1, 2, 4), alpha = 1")
u = [1.0, 2.0, 4.0]
f_star = utility_factors_gains(u, 1)
print("closed-form factors:", ["%.4f" % x for x in f_star])
i_star = information_functional_gains(f_star, u)
print("functional value at the closed form: %.6f" % i_star)

# poke the simplex around the minimizer; nothing should come in lower
worst = np.inf
for _ in range(20000):
    trial = rng.dirichlet([1.0, 1.0, 1.0])
    trial_value = information_functional_gains(list(trial), u)
    worst = min(worst, trial_value - i_star)
print("closest any of 20000 random simplex points gets: %+.3e" % worst)
print("(negative would mean we found something better -- we never do)")

print()
print("losses: utilities (-1, -2, -4), gamma = 1")
u_loss = [-1.0, -2.0, -4.0]
f_loss = utility_factors_losses(u_loss, 1)
print("closed-form factors:", ["%.4f" % x for x in f_loss])
print("note the order flips: the mildest loss (-1) carries the most weight")
i_loss = information_functional_losses(f_loss, u_loss)
worst = np.inf
for _ in range(20000):
    trial = rng.dirichlet([1.0, 1.0, 1.0])
    worst = min(worst, information_functional_losses(list(trial), u_loss) - i_loss)
print("perturbation margin on the loss side: %+.3e" % worst)

print()
print("sharpening the exponent concentrates the factors")
print("%-8s %-30s" % ("alpha", "factors for U = (1, 2, 4)"))
for alpha in (0.5, 1.0, 2.0, 4.0):
    f = utility_factors_gains(u, alpha)
    print("%-8s %-30s" % (alpha, " ".join("%.4f" % x for x in f)))
print("alpha -> 0 flattens toward uniform; alpha -> inf picks the argmax")

print()
print("exact arithmetic: rational inputs stay rational at unit exponent")
from fractions import Fraction

f_exact = utility_factors_gains([Fraction(1), Fraction(3)], 1)
print("U = (1, 3)  ->  f =", f_exact, " (exact fractions, no rounding)")
