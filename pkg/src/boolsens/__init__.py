"""Complexity measures of Boolean functions, cube subgraphs and Huang's signed matrix."""

from .constructions import and_f, and_of_ors, e3_tree, or_f, parity_f, rubinstein
from .core import (
    DEFAULT_CAPS,
    BooleanFunction,
    Caps,
    MultilinearPoly,
    flip_set,
    from_int,
    from_truth_table,
    multilinear_coeffs,
    relevant_variables,
    restrict,
    to_pm1,
)
from .errors import CapExceededError, ConvergenceError, ExpressionSyntaxError
from .measures import (
    MeasureReport,
    approx_degree,
    block_sensitivity,
    block_sensitivity_at,
    certificate_at,
    certificate_complexity,
    decision_tree_depth,
    degree,
    fourier,
    influence,
    measure_report,
    sensitivity,
    sensitivity_at,
    symmetrize,
)
from .parser import parse_expression

__version__ = "0.1.0"
