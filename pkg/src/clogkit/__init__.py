"""clogkit: exact continued logarithms and generalized continued fractions.

Expansion of reals over integer bases (three term conventions plus a
sequence-parameterized generalization), exact convergent and cylinder
geometry, term-distribution iteration with closed-form limits, and the
logarithmic Khinchine constants those distributions induce.
"""

from .distribution import (
    DistTable,
    FitResult,
    GridFunction,
    dist_table,
    dn_limit_type1,
    dn_limit_type3,
    dn_mass,
    fit_type1,
    iterate_m,
    kernel_sum,
    m_limit_type1,
    m_limit_type3,
    model_type1,
)
from .expand import (
    MAX_TERMS_CAP,
    ConvergentPair,
    Expansion,
    Status,
    Term,
    TermSequence,
    Variant,
    clog_terms,
    convergents,
    denominator_reduced,
    evaluate_partial_quotients,
    expand_gcf,
    expand_type1,
    expand_type2,
    expand_type3,
    from_json_dict,
    naturals,
    powers_of,
    reconstruct_from_remainder,
    sequence_from_name,
    tail_value,
    to_json_dict,
    to_text,
    value,
)
from .gcfpredicates import (
    SeqCertificate,
    certificate_json_dict,
    check_bounded_gap_ratio,
    check_divisible_gaps,
)
from .intervals import (
    CylinderSpec,
    Interval,
    cylinder_contains,
    cylinder_endpoints,
    cylinder_endpoints_gcf,
    cylinder_measure,
)
from .khinchine import (
    PUBLISHED_CLASSICAL,
    PUBLISHED_KL1,
    PUBLISHED_KL2,
    PUBLISHED_KL3,
    KhinchineValue,
    TermStats,
    classical_khinchine,
    kl_limit_gap,
    kl_type1,
    kl_type2_estimate,
    kl_type3,
    mu_limit_gap,
    term_stats,
)
from .numtypes import (
    BigRational,
    DomainError,
    ParseError,
    PrecisionGuard,
    check_base,
    floor_log_base,
    leading_digit,
    rational_from_decimal,
    significant_digits,
    term_cost_bits,
)

__version__ = "0.1.0"

__all__ = [
    "BigRational",
    "ConvergentPair",
    "CylinderSpec",
    "DistTable",
    "DomainError",
    "Expansion",
    "FitResult",
    "GridFunction",
    "Interval",
    "KhinchineValue",
    "MAX_TERMS_CAP",
    "PUBLISHED_CLASSICAL",
    "PUBLISHED_KL1",
    "PUBLISHED_KL2",
    "PUBLISHED_KL3",
    "ParseError",
    "PrecisionGuard",
    "SeqCertificate",
    "Status",
    "Term",
    "TermSequence",
    "TermStats",
    "Variant",
    "certificate_json_dict",
    "check_base",
    "check_bounded_gap_ratio",
    "check_divisible_gaps",
    "classical_khinchine",
    "clog_terms",
    "convergents",
    "cylinder_contains",
    "cylinder_endpoints",
    "cylinder_endpoints_gcf",
    "cylinder_measure",
    "denominator_reduced",
    "dist_table",
    "dn_limit_type1",
    "dn_limit_type3",
    "dn_mass",
    "evaluate_partial_quotients",
    "expand_gcf",
    "expand_type1",
    "expand_type2",
    "expand_type3",
    "fit_type1",
    "floor_log_base",
    "from_json_dict",
    "iterate_m",
    "kernel_sum",
    "kl_limit_gap",
    "kl_type1",
    "kl_type2_estimate",
    "kl_type3",
    "leading_digit",
    "m_limit_type1",
    "m_limit_type3",
    "model_type1",
    "mu_limit_gap",
    "naturals",
    "powers_of",
    "rational_from_decimal",
    "reconstruct_from_remainder",
    "sequence_from_name",
    "significant_digits",
    "tail_value",
    "term_cost_bits",
    "term_stats",
    "to_json_dict",
    "to_text",
    "value",
]
