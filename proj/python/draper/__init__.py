"""Exact analysis of the Draper adder with truncated controlled rotations."""

from ._draper import (
    BoundReport,
    FidelityResult,
    ParseError,
    PreconditionError,
    SizeLimitError,
    bound_report,
    carry_indicator,
    closed_form_fidelity,
    draper_add,
    draper_multi_add,
    error_magnitude_bound,
    error_probability_bound,
    exact_fidelity,
    first_order_estimate,
    full_distribution,
    gamma_norm_bound,
    multi_add_fidelity,
    multi_add_magnitude_bound,
    overlap_product_fidelity,
    qft_gate_counts,
    truncation,
    worst_case_fidelity,
)

__all__ = [
    "BoundReport",
    "FidelityResult",
    "ParseError",
    "PreconditionError",
    "SizeLimitError",
    "bound_report",
    "carry_indicator",
    "closed_form_fidelity",
    "draper_add",
    "draper_multi_add",
    "error_magnitude_bound",
    "error_probability_bound",
    "exact_fidelity",
    "first_order_estimate",
    "full_distribution",
    "gamma_norm_bound",
    "multi_add_fidelity",
    "multi_add_magnitude_bound",
    "overlap_product_fidelity",
    "qft_gate_counts",
    "truncation",
    "worst_case_fidelity",
]
