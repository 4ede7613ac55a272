"""Exact Schreier-family combinatorics: ordinals, families, repeated averages,
tree metrics, analysis trees and concrete embeddings."""

__version__ = "0.1.0"

from .ordinal import Ordinal, ONE, OMEGA, ZERO, parse_ordinal, format_ordinal
from .schreier import (
    enumerate_family,
    fine_is_member,
    finset,
    is_maximal,
    is_member,
    maximal_sets,
    parse_finset,
)
from .averages import zeta, z_vector, smallness_check
from .metrics import d1, dinf, rescale_check, stability_table
from .spaces import SparseVec, SpreadCodec, biorth_tree, spread_code
from .embeddings import audit, phi_ell1, phi_summing
from .analysis import beta_analysis, components, e_family, special_convex_family

__all__ = [
    "Ordinal",
    "ONE",
    "OMEGA",
    "ZERO",
    "parse_ordinal",
    "format_ordinal",
    "enumerate_family",
    "fine_is_member",
    "finset",
    "is_maximal",
    "is_member",
    "maximal_sets",
    "parse_finset",
    "zeta",
    "z_vector",
    "smallness_check",
    "d1",
    "dinf",
    "rescale_check",
    "stability_table",
    "SparseVec",
    "SpreadCodec",
    "biorth_tree",
    "spread_code",
    "audit",
    "phi_ell1",
    "phi_summing",
    "beta_analysis",
    "components",
    "e_family",
    "special_convex_family",
]
