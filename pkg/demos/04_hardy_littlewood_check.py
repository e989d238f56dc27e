"""
Checking the mixed-norm bounds
==============================

The row and column ``l_r(l_2)`` norms, and entrywise ``l_r`` / ``l_s``
norms, are bounded by ``||A||_{p,q}`` with constant 1. ``check_instance``
evaluates every bound that applies to a pair; ``run_suite`` sweeps a
population of matrices.
"""
import numpy as np

from hlnorm import SuiteConfig, check_instance, make_pair, random_positive_matrix, run_suite

###############################################################################
# One matrix, one pair

A = random_positive_matrix(4, 4, "sparse", seed=5)
for rec in check_instance(A, make_pair(3, "3/2"), "demo"):
    print(f"{rec.theorem:12s} lhs {rec.lhs:.6f}  rhs {rec.rhs:.6f}  ratio {rec.ratio:.4f}  {rec.passed}")

###############################################################################
# The identity makes the bounds tight: every ratio is exactly 1

for rec in check_instance(np.eye(6), make_pair(4, 2), "identity-6"):
    if rec.theorem in ("T1-rows", "T1-cols", "T2-improved"):
        print(rec.theorem, rec.ratio)

###############################################################################
# A small sweep

cfg = SuiteConfig(sizes=[[2, 2], [3, 4]], instances_per_size=2, identity_sizes=[1, 2, 3],
                  pairs=[["2", "1"], ["3", "3/2"], ["inf", "2"]])
report = run_suite(cfg)
print(report.counts)
print("worst ratios:", report.worst_ratio)
print(report.to_csv().splitlines()[0])
