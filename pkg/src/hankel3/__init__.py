"""Third Hankel determinant H3(1) bounds for four classes of starlike-type functions."""

from .bounds import (
    BoundReport,
    PipelineFailure,
    bound_class,
    bound_exponential,
    bound_lune,
    bound_starlike,
    bound_symmetric_points,
)
from .classes import ClassId, derive_coefficients, eval_grouped, eval_hankel3, get_class, hankel3_polynomial
from .lemmas import check_carlson, classify_region, psi_eval, sample_schwarz
from .search import SearchConfig, gap_report, search
from .series import TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ClassId",
    "PipelineFailure",
    "SearchConfig",
    "TruncatedSeries",
    "bound_class",
    "bound_exponential",
    "bound_lune",
    "bound_starlike",
    "bound_symmetric_points",
    "check_carlson",
    "classify_region",
    "derive_coefficients",
    "eval_grouped",
    "eval_hankel3",
    "gap_report",
    "get_class",
    "hankel3_polynomial",
    "psi_eval",
    "sample_schwarz",
    "search",
]
