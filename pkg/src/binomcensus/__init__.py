"""Exact censuses of monic irreducible binomials over finite fields.

Counts N_q(t) = #{a in F_q* : x^t - a irreducible} and the census sums
sum_{t<=T} N_q(t) exactly, validates them against a brute-force finite
field oracle, and compares them with lattice-point bounds and asymptotic
growth laws.
"""

from .arith import Factorization, euler_phi, factor, is_prime, phi_over, rad, rad4
from .census import (
    BoundReport,
    CensusInput,
    CensusReport,
    CongruenceCase,
    DegenerateCensusError,
    LogPowerBound,
    RefinedUpperBound,
    asymptotic_estimate,
    census_report,
    enumerate_eligible,
    exact_sum,
    is_prime_power,
    log_power_bound,
    naive_bounds,
    normalized_ratio,
    nq,
    ratio_limit,
    refined_upper_bound,
    stratum_closed_forms,
    stratum_sums,
)
from .fields import (
    FieldCtx,
    OrderRecord,
    build_field,
    criterion_irreducible,
    kernel_backend,
    multiplicative_order,
    oracle_binomial_count,
    oracle_binomial_scan,
    rabin_irreducible,
)
from .lattice import (
    LatticeInstance,
    StrataCounts,
    coeffs_are_prime_logs,
    count_products,
    count_real,
    iter_exponent_vectors,
    refined_bounds,
    shift_identity_check,
    strata,
    trivial_bounds,
    two_term_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "Factorization",
    "factor",
    "is_prime",
    "euler_phi",
    "rad",
    "rad4",
    "phi_over",
    "FieldCtx",
    "OrderRecord",
    "build_field",
    "multiplicative_order",
    "criterion_irreducible",
    "rabin_irreducible",
    "oracle_binomial_scan",
    "oracle_binomial_count",
    "kernel_backend",
    "LatticeInstance",
    "StrataCounts",
    "count_products",
    "iter_exponent_vectors",
    "count_real",
    "strata",
    "shift_identity_check",
    "trivial_bounds",
    "refined_bounds",
    "two_term_estimate",
    "coeffs_are_prime_logs",
    "CongruenceCase",
    "CensusInput",
    "CensusReport",
    "BoundReport",
    "RefinedUpperBound",
    "LogPowerBound",
    "DegenerateCensusError",
    "is_prime_power",
    "nq",
    "enumerate_eligible",
    "exact_sum",
    "stratum_sums",
    "stratum_closed_forms",
    "asymptotic_estimate",
    "normalized_ratio",
    "ratio_limit",
    "refined_upper_bound",
    "naive_bounds",
    "log_power_bound",
    "census_report",
    "__version__",
]
