"""Exact tools for the exponential equations a^x + b^y = c^z and a^x - b^y = c."""

from __future__ import annotations

from .engine import (
    EquationTriple,
    Solution,
    count_solutions,
    enumerate_pillai,
    enumerate_solutions,
    pair_analysis,
    parity_class,
    weak_form_reduce,
)
from .errors import DegeneratePairError, FalsificationError, NonCrossingError
from .numeric import ext_mult_order, exact_log, lte_valuation, valuation

__version__ = "0.1.0"

__all__ = [
    "DegeneratePairError",
    "EquationTriple",
    "FalsificationError",
    "NonCrossingError",
    "Solution",
    "count_solutions",
    "enumerate_pillai",
    "enumerate_solutions",
    "exact_log",
    "ext_mult_order",
    "lte_valuation",
    "pair_analysis",
    "parity_class",
    "valuation",
    "weak_form_reduce",
]
