"""Three-point quadrature errors and their P-function error bounds."""

from .bounds import (
    BoundReport,
    CaseTag,
    HolderPair,
    bound_holder,
    bound_power_mean,
    classical_simpson_bound,
    classify_case,
    evaluate,
    preset,
)
from .catalog import Func1D, Interval, hh_p_check, is_p_function_sampled, lookup
from .quadrature import RuleParams, compute_If, lemma_identity_rhs, reference_integral

__all__ = [
    "BoundReport",
    "CaseTag",
    "Func1D",
    "HolderPair",
    "Interval",
    "RuleParams",
    "bound_holder",
    "bound_power_mean",
    "classical_simpson_bound",
    "classify_case",
    "compute_If",
    "evaluate",
    "hh_p_check",
    "is_p_function_sampled",
    "lemma_identity_rhs",
    "lookup",
    "preset",
    "reference_integral",
]
