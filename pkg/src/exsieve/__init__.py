"""Exact inclusion-exclusion sums, Bonferroni brackets, and convergence
certificates for binomial-moment series over finite event families and
Z+-valued probability mass functions.

All arithmetic is exact rational or certified interval; no silent
floating-point rounding enters any reported value.
"""

from .atoms import (
    AtomDecomposition,
    decompose,
    moments_from_decomposition,
    occupancy_pmf,
    verify_sk_tk_identity,
)
from .errors import (
    BadK,
    DivergentSeries,
    EventCapExceeded,
    ExsieveError,
    InsufficientPrefix,
    NegativeWeight,
    NoCertificate,
    NotNormalized,
    SchemaError,
    WidthNotAchievable,
    ZeroMass,
)
from .gen import random_explicit_pmf, random_family
from .kernel import BACKEND, available_backends, subset_scan
from .moments import (
    CERTIFIED_CONVERGES,
    CERTIFIED_DIVERGES,
    INCONCLUSIVE,
    POINT,
    TAIL,
    Bracket,
    CascadeReport,
    ConvergenceVerdict,
    bracket,
    check_exact_condition,
    check_takacs,
    evaluate_series,
    finiteness_cascade,
    sk_from_pmf,
)
from .numerics import (
    DEFAULT_PRECISION_BITS,
    IntervalScalar,
    Rat,
    Scalar,
    approx_str,
    binom,
    format_rat,
    parse_rat,
)
from .sieve import (
    DEFAULT_MAX_EVENTS,
    IdentityReport,
    SieveResult,
    bonferroni_bracket_finite,
    compute_Skn,
    compute_all_Skn,
    sieve_report,
    union_of_k_intersections,
    union_prob_bruteforce,
    verify_finite_identity,
    verify_generalized_identity,
)
from .space import (
    BinomialMomentSeq,
    EventFamily,
    FiniteSpace,
    TailCertificate,
    ZPlusPmf,
    first_support_index,
    make_space,
    pmf_weight,
    truncate_conditional,
)

__version__ = "0.1.0"

__all__ = [
    "AtomDecomposition",
    "BACKEND",
    "BadK",
    "BinomialMomentSeq",
    "Bracket",
    "CERTIFIED_CONVERGES",
    "CERTIFIED_DIVERGES",
    "CascadeReport",
    "ConvergenceVerdict",
    "DEFAULT_MAX_EVENTS",
    "DEFAULT_PRECISION_BITS",
    "DivergentSeries",
    "EventCapExceeded",
    "EventFamily",
    "ExsieveError",
    "FiniteSpace",
    "INCONCLUSIVE",
    "IdentityReport",
    "InsufficientPrefix",
    "IntervalScalar",
    "NegativeWeight",
    "NoCertificate",
    "NotNormalized",
    "POINT",
    "Rat",
    "Scalar",
    "SchemaError",
    "SieveResult",
    "TAIL",
    "TailCertificate",
    "WidthNotAchievable",
    "ZPlusPmf",
    "ZeroMass",
    "approx_str",
    "available_backends",
    "binom",
    "bonferroni_bracket_finite",
    "bracket",
    "check_exact_condition",
    "check_takacs",
    "compute_Skn",
    "compute_all_Skn",
    "decompose",
    "evaluate_series",
    "finiteness_cascade",
    "first_support_index",
    "format_rat",
    "make_space",
    "moments_from_decomposition",
    "occupancy_pmf",
    "parse_rat",
    "pmf_weight",
    "random_explicit_pmf",
    "random_family",
    "sieve_report",
    "sk_from_pmf",
    "subset_scan",
    "truncate_conditional",
    "union_of_k_intersections",
    "union_prob_bruteforce",
    "verify_finite_identity",
    "verify_generalized_identity",
    "verify_sk_tk_identity",
]
