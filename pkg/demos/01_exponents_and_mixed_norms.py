"""
Exponents and mixed norms
=========================

Exponents are stored as exact reciprocals, so ``inf`` is just ``1/p = 0``
and derived indices like ``1/r = 1/q - 1/p`` carry no rounding.
"""
import numpy as np

from hlnorm import conjugate, entrywise_norm, make_pair, mixed_norm_cols, mixed_norm_rows, vector_norm

###############################################################################
# Exponent pairs and their derived indices

for p, q in [(2, 1), (4, "4/3"), ("inf", 2), (3, 3)]:
    pair = make_pair(p, q)
    print(f"p={pair.p!s:>4}  q={pair.q!s:>4}  r={pair.r!s:>4}  s={pair.s!s:>4}  p*={pair.p_conj}")

print("conjugate of 3/2:", conjugate("3/2"))

###############################################################################
# Vector norms are scaled by the largest entry, so huge or tiny values are safe

x = np.array([3e200, 4e200])
print("l2 of", x, "=", vector_norm(x, 2))
print("l_inf =", vector_norm(x, "inf"), " l_1/2 =", vector_norm([1.0, 1.0], "1/2"))

###############################################################################
# Mixed norms: an outer norm of the inner row (or column) norms

A = np.array([[1.0, 2.0, 0.0],
              [0.0, 1.0, 3.0]])
print("l_1(l_2) over rows   :", mixed_norm_rows(A, 1, 2))
print("l_1(l_2) over columns:", mixed_norm_cols(A, 1, 2))
print("entrywise l_2        :", entrywise_norm(A, 2), "vs Frobenius", np.linalg.norm(A))
