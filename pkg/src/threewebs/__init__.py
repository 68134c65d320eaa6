"""Exact computations on planar 3-webs around a point.

Normal forms x + y + x*y*(x - y)*g, classification of simple and mirror
symmetries, and synthesis of webs with a circular symmetry, all over
truncated bivariate power series with rational coefficients.
"""

from .circular import (
    CircularResult,
    LinearModel,
    is_linear_invariant,
    lemma1_admissible,
    lemma1_synthesize,
    solve_circular,
    solve_theta,
    theorem3_example,
)
from .curvature import blaschke_curvature
from .errors import WebError
from .expr import format_series, parse_expr, parse_series1, parse_series2
from .normalform import NormalForm, Web, lambda_action, normalize, scale_equivalent, sternberg_k
from .series import PlaneMap, Series1, Series2, compose2, div_exact, invert1, invert_map, log1p, restrict_line
from .symmetry import (
    Foliation,
    FoliationPermutation,
    SimpleTag,
    classify_mirror,
    classify_simple,
    foliation_permutation,
    symmetry_witnesses,
)

__version__ = "0.1.0"
