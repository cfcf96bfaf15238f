"""Exact generating-function arithmetic for tangent, Bernoulli, Euler, Genocchi
and Hermite polynomial families, with a mechanical identity checker."""

from .arith import MultiPoly, binomial, poly_add, poly_eval, poly_mul, poly_substitute, render
from .errors import (
    EgfError,
    IndexBeyondTruncation,
    InvalidSpec,
    NonUnitConstantTerm,
    NonUnitLeadingTerm,
    NonzeroConstantTerm,
    OrderMismatch,
    SubstituteZeroIntoLaurent,
    UnknownCase,
    UnknownFamily,
    ValuationError,
)
from .families import (
    FAMILIES,
    FamilySpec,
    build,
    extract_polynomial,
    falling_factorial,
    family,
    hermite_closed,
    polylog_coeffs,
    stirling1,
    stirling2,
)
from .identities import IdentityCase, Variant, register_paper_catalog, run_all, run_case
from .series import (
    EgfSeries,
    series_add,
    series_compose_outer,
    series_div_shift,
    series_div_unit,
    series_exp,
    series_mul,
    series_pow,
    series_scale_t,
)

__version__ = "0.1.0"

__all__ = [
    "MultiPoly",
    "binomial",
    "poly_add",
    "poly_eval",
    "poly_mul",
    "poly_substitute",
    "render",
    "EgfError",
    "IndexBeyondTruncation",
    "InvalidSpec",
    "NonUnitConstantTerm",
    "NonUnitLeadingTerm",
    "NonzeroConstantTerm",
    "OrderMismatch",
    "SubstituteZeroIntoLaurent",
    "UnknownCase",
    "UnknownFamily",
    "ValuationError",
    "FAMILIES",
    "FamilySpec",
    "build",
    "extract_polynomial",
    "falling_factorial",
    "family",
    "hermite_closed",
    "polylog_coeffs",
    "stirling1",
    "stirling2",
    "IdentityCase",
    "Variant",
    "register_paper_catalog",
    "run_all",
    "run_case",
    "EgfSeries",
    "series_add",
    "series_compose_outer",
    "series_div_shift",
    "series_div_unit",
    "series_exp",
    "series_mul",
    "series_pow",
    "series_scale_t",
]
