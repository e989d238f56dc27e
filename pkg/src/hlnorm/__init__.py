"""Operator norms, mixed norms and diagonal factorizations of nonnegative matrices."""
from .exponents import Exponent, ExponentPair, conjugate, make_pair
from .factorization import Factorization, default_seed_d, objective, optimize, verify_factorization
from .io import MatrixParseError, parse_matrix
from .matrices import (PositiveMatrix, basis_vector, entrywise_norm, mixed_norm_cols,
                       mixed_norm_rows, transpose, vector_norm)
from .opnorm import (NormEstimate, exact_norm, grid_oracle, norm_via_duality, operator_norm,
                     power_iteration)
from .verify import (InequalityRecord, SuiteConfig, VerificationReport, check_duality_identity,
                     check_improvement_dominance, check_instance, check_theorem1, check_theorem2,
                     random_positive_matrix, run_suite)

__version__ = "0.1.0"
