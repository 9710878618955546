"""Cohomology, stability and deformation bookkeeping for weighted Tango bundles on P^n."""

from .bundles import (DirectSum, Dual, FBundle, KClass, Line, QBundle, SymPowLineSum, SymQ,
                      Tensor, Twist, WedgeF, WedgePowLineSum, WedgeQ, c1_f, c1_q,
                      c1_tango_formula, canonical_key, chern_of, k_class, normalize, rank_of,
                      render, slope_of)
from .chase import (Engine, InconsistentTable, UnresolvableExpression, cohomology, dual_table,
                    euler)
from .combinatorics import CohomTable, DimValue, Exact, Interval, binom, h_line
from .deformation import DeformationReport, smoothness_report
from .params import InvalidParams, TangoParams
from .parser import ParseError, parse
from .stability import StabilityVerdict, analyze_stability, destabilize_witness, hoppe_verify
from .weights import GradedWedgeVector, WSpace, sample_wspace, wspace_validate

__version__ = "0.1.0"

__all__ = [
    "DirectSum",
    "Dual",
    "FBundle",
    "KClass",
    "Line",
    "QBundle",
    "SymPowLineSum",
    "SymQ",
    "Tensor",
    "Twist",
    "WedgeF",
    "WedgePowLineSum",
    "WedgeQ",
    "c1_f",
    "c1_q",
    "c1_tango_formula",
    "canonical_key",
    "chern_of",
    "k_class",
    "normalize",
    "rank_of",
    "render",
    "slope_of",
    "Engine",
    "InconsistentTable",
    "UnresolvableExpression",
    "cohomology",
    "dual_table",
    "euler",
    "CohomTable",
    "DimValue",
    "Exact",
    "Interval",
    "binom",
    "h_line",
    "DeformationReport",
    "smoothness_report",
    "InvalidParams",
    "TangoParams",
    "ParseError",
    "parse",
    "StabilityVerdict",
    "analyze_stability",
    "destabilize_witness",
    "hoppe_verify",
    "GradedWedgeVector",
    "WSpace",
    "sample_wspace",
    "wspace_validate",
]
