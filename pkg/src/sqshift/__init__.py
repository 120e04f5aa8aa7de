"""sqshift: exact summation of tau(n)/2**omega(n) over square-completed
integers, with Euler-product constants and growth-law diagnostics.

Every n >= 1 completes to a square n + s(n) with the smallest possible
shift s(n).  The package evaluates partial sums of f(n + s(n)) for
f(n) = tau(n)/2**omega(n) exactly (dyadic rationals), both term by term
and through an O(sqrt x)-term block decomposition, and measures how the
results grow against x ln x / x-shaped models.
"""

from .dyadic import DyadicRational
from .errors import CapExceededError
from .factor import (
    Factorization,
    SpfTable,
    build_spf,
    factorize,
    omega,
    primes_up_to,
    tau,
    tau_per_unitary,
    tau_per_unitary_sq,
    unitary_divisor_count,
)
from .squares import Block, ShiftDecomposition, isqrt, square_block, square_completion
from .summatory import (
    SquareValueCache,
    SumReport,
    sieve_square_values,
    sum_block,
    sum_block_paper_literal,
    sum_direct,
    sum_squares,
    sum_squares_weighted,
)
from .euler import (
    EULER_GAMMA,
    EulerProductEstimate,
    MathConstants,
    dirichlet_factorization_check,
    local_factor,
    local_factor_series,
    product_constants,
    product_constants_series,
    series_identity_check,
    truncated_product,
    truncated_product_pair,
    zeta_real,
)
from .asymptotic import (
    FitResult,
    ModelConstantsFit,
    ModelParams,
    ResidualPoint,
    fit_log_power,
    fit_model_constants,
    model_shifted_sum,
    model_square_sum,
    residual_table,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "CapExceededError",
    "DyadicRational",
    "EULER_GAMMA",
    "EulerProductEstimate",
    "Factorization",
    "FitResult",
    "MathConstants",
    "ModelConstantsFit",
    "ModelParams",
    "ResidualPoint",
    "ShiftDecomposition",
    "SpfTable",
    "SquareValueCache",
    "SumReport",
    "build_spf",
    "dirichlet_factorization_check",
    "factorize",
    "fit_log_power",
    "fit_model_constants",
    "isqrt",
    "local_factor",
    "local_factor_series",
    "model_shifted_sum",
    "model_square_sum",
    "omega",
    "primes_up_to",
    "product_constants",
    "product_constants_series",
    "residual_table",
    "series_identity_check",
    "sieve_square_values",
    "square_block",
    "square_completion",
    "sum_block",
    "sum_block_paper_literal",
    "sum_direct",
    "sum_squares",
    "sum_squares_weighted",
    "tau",
    "tau_per_unitary",
    "tau_per_unitary_sq",
    "truncated_product",
    "truncated_product_pair",
    "unitary_divisor_count",
    "zeta_real",
]
