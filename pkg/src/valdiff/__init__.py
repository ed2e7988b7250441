"""Valued differential fields of Hahn series over Z^n with lex order.

Exact arithmetic throughout: rational coefficients (or Q(x)), integer
exponent vectors, and an explicit frontier on every truncated series.
"""
from .coarsen import CoarseContext, coarse_valuation, ddeg_coarse, specialize_poly, specialize_series
from .cuts import CutApprox, CutClass, classify_delta, ddeg_along_cut, growth_diagnostic, validate_cut
from .dhensel import SolverReport, asymptotic_witness, dh_premise, dh_solve
from .diffpoly import DiffPoly, DominantData
from .errors import ValdiffError
from .ordgroup import INF, ConvexLevel, GroupVector, arch_class
from .residue import QQ_TRIVIAL, QQ_X, lin_solve
from .series import DerivationSpec, Series

__version__ = "0.1.0"

__all__ = [
    "CoarseContext", "ConvexLevel", "CutApprox", "CutClass", "DerivationSpec", "DiffPoly",
    "DominantData", "GroupVector", "INF", "QQ_TRIVIAL", "QQ_X", "Series", "SolverReport",
    "ValdiffError", "arch_class", "asymptotic_witness", "classify_delta", "coarse_valuation",
    "ddeg_along_cut", "ddeg_coarse", "dh_premise", "dh_solve", "growth_diagnostic", "lin_solve",
    "specialize_poly", "specialize_series", "validate_cut",
]
