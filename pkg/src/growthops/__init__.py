"""Numerical criteria for intrinsic operators into growth spaces on the unit disk."""

__version__ = "0.1.0"

from ._config import DEFAULT_NORM_GRID, DEFAULT_PROFILE_GRID, DEFAULT_TOLERANCES, NormGrid, ProfileGrid, Tolerances
from .criteria import (
    AnalysisVerdict,
    CriterionProfile,
    SymbolFamily,
    analyze,
    boundedness_verdict,
    classify_symbol,
    closed_form_verdict,
    compactness_verdict,
    criterion_profile,
    dn_diagnostic,
    kernel_lower_bound,
)
from .estimator import OperatorAnalyzer
from .exceptions import (
    DomainError,
    ExprSyntaxError,
    GrowthOpsError,
    InvalidWeightError,
    QuadratureError,
    SingularityError,
    UnsupportedError,
)
from .expr import ExprAST, differentiate_ast, eval_ast, parse, to_series
from .operators import OperatorSymbol, apply, shift_relation_residual
from .series import TaylorSeries
from .spaces import FunctionHandle, SpaceDescriptor, little_space_membership, parse_space, point_eval_norm, space_norm
from .weights import Weight, is_typical, parse_weight

__all__ = [
    "__version__",
    "Tolerances",
    "ProfileGrid",
    "NormGrid",
    "DEFAULT_TOLERANCES",
    "DEFAULT_PROFILE_GRID",
    "DEFAULT_NORM_GRID",
    "AnalysisVerdict",
    "CriterionProfile",
    "SymbolFamily",
    "analyze",
    "boundedness_verdict",
    "classify_symbol",
    "closed_form_verdict",
    "compactness_verdict",
    "criterion_profile",
    "dn_diagnostic",
    "kernel_lower_bound",
    "OperatorAnalyzer",
    "GrowthOpsError",
    "DomainError",
    "ExprSyntaxError",
    "InvalidWeightError",
    "QuadratureError",
    "SingularityError",
    "UnsupportedError",
    "ExprAST",
    "parse",
    "eval_ast",
    "differentiate_ast",
    "to_series",
    "OperatorSymbol",
    "apply",
    "shift_relation_residual",
    "TaylorSeries",
    "FunctionHandle",
    "SpaceDescriptor",
    "parse_space",
    "point_eval_norm",
    "space_norm",
    "little_space_membership",
    "Weight",
    "parse_weight",
    "is_typical",
]
