"""Exact toolkit for cross-t-intersecting families."""

from .cross_config import (
    CrossConfigResult,
    Labeling,
    all_optimal_labelings,
    max_product_exact,
    max_sum_exact,
)
from .errors import CrossFamError
from .extremal import beta, ell, kappa
from .family_core import SetFamily, conflict_graph, decompose, is_cross_t_intersecting, is_t_intersecting
from .family_io import parse_family_file, write_family_file
from .reports import VerificationReport, write_report
from .suite import SuiteConfig, run_suite

__all__ = [
    "CrossConfigResult",
    "CrossFamError",
    "Labeling",
    "SetFamily",
    "SuiteConfig",
    "VerificationReport",
    "all_optimal_labelings",
    "beta",
    "conflict_graph",
    "decompose",
    "ell",
    "is_cross_t_intersecting",
    "is_t_intersecting",
    "kappa",
    "max_product_exact",
    "max_sum_exact",
    "parse_family_file",
    "run_suite",
    "write_family_file",
    "write_report",
]
