"""Singular points, weights and folds of Milnor fibration product maps."""
__version__ = "0.1.0"

from .exceptions import *  # noqa: E402,F401,F403
from .fold import FoldReport, fold_test, index_of  # noqa: E402
from .polynomial import (  # noqa: E402
    Polynomial,
    combined_hessian,
    evaluate,
    log_gradient,
    log_hessian,
    parse_polynomials,
)
from .singular import (  # noqa: E402
    MapSpec,
    SingularityReport,
    analyze_point,
    homogeneous_2var_circles,
    is_singular_algebraic,
    is_singular_numeric,
    sphere_search,
)
from .weights import common_weights, common_weights_multi, weight_space  # noqa: E402

__all__ = [
    "FoldReport",
    "MapSpec",
    "Polynomial",
    "SingularityReport",
    "analyze_point",
    "combined_hessian",
    "common_weights",
    "common_weights_multi",
    "evaluate",
    "fold_test",
    "homogeneous_2var_circles",
    "index_of",
    "is_singular_algebraic",
    "is_singular_numeric",
    "log_gradient",
    "log_hessian",
    "parse_polynomials",
    "sphere_search",
    "weight_space",
]
