"""Probability of a composite choice event, split into its two parts.

A choice prospect here is "pick option n while the undecided rest of the
mind is in a superposition b".  Its probability under a strategic state
rho splits as p = f + q: a diagonal (classical) part f and an off-diagonal
interference part q.  This script builds small states by hand, prints the
split, and then damps the off-diagonal structure to watch q die off.
"""
import numpy as np

from qchoice import (
    DensityOperator,
    Prospect,
    decohere,
    normalize_prospect_set,
    prospect_probability,
    prospect_state,
    random_density_operator,
    sample_inconclusive,
)

n_dim, b_dim = 2, 2  # two options, two inconclusive basis directions
dims = (n_dim, b_dim)

print("=" * 60)
print("1. A pure state with maximal constructive interference")
print("=" * 60)

# Equal superposition over the b-register inside option 0.
b = np.array([1.0, 1.0]) / np.sqrt(2)
psi = prospect_state(Prospect(0, b), n_dim, b_dim)
rho = DensityOperator.from_pure(psi)

triple = prospect_probability(rho, Prospect(0, b), dims)
print(f"p = {triple.p:.6f}")
print(f"f = {triple.f:.6f}   (diagonal part)")
print(f"q = {triple.q:.6f}   (interference part)")
print(f"split defect |p-(f+q)| = {abs(triple.p - (triple.f + triple.q)):.2e}")
# The state IS the prospect state, so p = 1; half of it rides on q.

print()
print("=" * 60)
print("2. Destructive interference: same f, opposite q")
print("=" * 60)

b_minus = np.array([1.0, -1.0]) / np.sqrt(2)
triple = prospect_probability(rho, Prospect(0, b_minus), dims)
print(f"p = {triple.p:.6f}, f = {triple.f:.6f}, q = {triple.q:.6f}")
print("the diagonal alone would say 1/2; interference cancels it to 0")

print()
print("=" * 60)
print("3. A random mixed state, all prospects at once")
print("=" * 60)

rng = np.random.default_rng(42)
n_dim, b_dim = 3, 4
dims = (n_dim, b_dim)
rho = random_density_operator(n_dim * b_dim, rng)
b = sample_inconclusive(b_dim, rng)
triples = [prospect_probability(rho, Prospect(n, b), dims) for n in range(n_dim)]

print("raw per-prospect values:")
for n, t in enumerate(triples):
    print(f"  option {n}:  p = {t.p:.5f}  f = {t.f:.5f}  q = {t.q:+.5f}")
print(f"raw p-sum = {sum(t.p for t in triples):.5f}  (not 1 -- one shared b)")

family = normalize_prospect_set(triples)
print("after family normalization:")
for n, t in enumerate(family):
    print(f"  option {n}:  p = {t.p:.5f}  f = {t.f:.5f}  q = {t.q:+.5f}")
print(f"sum p = {sum(t.p for t in family):.12f}")
print(f"sum q = {sum(t.q for t in family):+.2e}   (alternation: exact zero sum)")

print()
print("=" * 60)
print("4. Decoherence sweep: interference dies linearly")
print("=" * 60)

print(f"{'damping':>8} {'q(option 0)':>14} {'q(option 1)':>14} {'q(option 2)':>14}")
for level in np.linspace(0.0, 1.0, 6):
    damped = decohere(rho, float(level), block_dims=dims)
    qs = [prospect_probability(damped, Prospect(n, b), dims).q for n in range(n_dim)]
    print(f"{level:8.2f} " + " ".join(f"{q:+14.6f}" for q in qs))
print("at damping 1 the state is diagonal and only the classical f survives")
