"""Farey-graph engine for non-loose Legendrian Hopf links in lens spaces."""

from .farey import (
    INF,
    ZERO,
    ContinuedFraction,
    FareyPath,
    MobiusMap,
    Slope,
    acw_neighbor,
    apply_mobius,
    cw_neighbor,
    farey_dot,
    farey_sum,
    minimal_path,
    neg_cf_eval,
    neg_cf_expand,
    parse_slope,
    slope,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "ZERO",
    "ContinuedFraction",
    "FareyPath",
    "MobiusMap",
    "Slope",
    "acw_neighbor",
    "apply_mobius",
    "cw_neighbor",
    "farey_dot",
    "farey_sum",
    "minimal_path",
    "neg_cf_eval",
    "neg_cf_expand",
    "parse_slope",
    "slope",
]
