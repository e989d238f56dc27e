"""
Diagonal factorizations
=======================

Write ``A = diag(d) B``. The cost ``||d||_r ||B||_{p,p}`` is always at least
``||A||_{p,q}``, and the best ``d`` closes the gap. ``optimize`` searches for
that ``d``.
"""
import numpy as np

from hlnorm import (default_seed_d, make_pair, objective, operator_norm, optimize,
                    random_positive_matrix, verify_factorization)

A = random_positive_matrix(5, 4, "uniform", seed=11)
pair = make_pair(4, "4/3")
norm = operator_norm(A, pair)

###############################################################################
# Any positive d gives an upper bound

rng = np.random.default_rng(0)
for _ in range(3):
    d = rng.uniform(0.1, 2.0, size=A.m)
    print(f"random d: cost {objective(A, d, pair):.6f} >= norm {norm.value:.6f}")
print(f"row-norm seed: cost {objective(A, default_seed_d(A, pair), pair):.6f}")

###############################################################################
# The optimizer drives the gap to zero

f = optimize(A, pair)
print(f"optimized cost {f.objective:.12f}, gap {f.gap:.1e}, sweeps {f.iterations}")
print("d =", np.round(f.d, 6))
print("history nonincreasing:", bool(np.all(np.diff(f.history) <= 0)))

check = verify_factorization(A, f, norm)
print("reconstruction and soundness ok:", check.ok)
