"""
Operator norms of nonnegative matrices
======================================

``||A||_{p,q}`` is the largest ``||Ax||_q`` over ``||x||_p = 1``. For a
nonnegative ``A`` the maximizer can be taken nonnegative, and a power
iteration climbs to it monotonically.
"""
import numpy as np

from hlnorm import (exact_norm, grid_oracle, make_pair, norm_via_duality, operator_norm,
                    power_iteration, random_positive_matrix)

###############################################################################
# Closed forms are used whenever one applies

pair = make_pair(4, 2)
n = 5
est = operator_norm(np.eye(n), pair)
print(est.method, est.value, "expected n^(1/r) =", n ** float(pair.r.inv))

u, v = np.array([1.0, 2.0, 3.0]), np.array([0.5, 1.0])
print(operator_norm(np.outer(u, v), pair).method)

###############################################################################
# A generic matrix goes through the power iteration; the history never decreases

A = random_positive_matrix(6, 4, "exponential", seed=3)
pair = make_pair(3, "3/2")
print("closed form available:", exact_norm(A, pair) is not None)
run = power_iteration(A, pair)
h = np.array(run.history)
print(f"{run.iterations} iterations, value {run.value:.12f}, monotone: {bool(np.all(np.diff(h) >= 0))}")

###############################################################################
# Two independent cross-checks: the dual problem and a brute-force grid

dual = norm_via_duality(A, pair)
grid = grid_oracle(A, pair, resolution=60)
print(f"direct {operator_norm(A, pair).value:.12f}")
print(f"dual   {dual.value:.12f}")
print(f"grid   [{grid.lower:.12f}, {grid.upper:.12f}] from {grid.iterations} points")
