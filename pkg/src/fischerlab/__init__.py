"""Exact Fischer decompositions, apolar norms and growth diagnostics."""

__version__ = "0.1.0"

from .scalars import ComplexRational
from .poly import GradedSeries, Polynomial, homogeneous_expansion
from .textio import ParseError, parse_expression, print_expression
from .apolar import apolar_inner, apolar_norm, apolar_norm_sq, beauzamy_bound, verify_adjoint
from .fischer import (
    FischerDecomposition,
    FischerFault,
    analyze_structure,
    decompose,
    decompose_series,
    injectivity_check,
    uniqueness_order_bound,
)
from .ks import ks_scan, min_singular_value
from .growth import growth_report, order_estimate, sup_norm_estimate
from .seqlemma import LemmaConfig, classify_regime, limit_probe

__all__ = [
    "ComplexRational", "GradedSeries", "Polynomial", "homogeneous_expansion",
    "ParseError", "parse_expression", "print_expression",
    "apolar_inner", "apolar_norm", "apolar_norm_sq", "beauzamy_bound", "verify_adjoint",
    "FischerDecomposition", "FischerFault", "analyze_structure", "decompose", "decompose_series",
    "injectivity_check", "uniqueness_order_bound",
    "ks_scan", "min_singular_value",
    "growth_report", "order_estimate", "sup_norm_estimate",
    "LemmaConfig", "classify_regime", "limit_probe",
]
