"""Python access to the fimalg library."""

import json
from fractions import Fraction

from ._fimalg import (
    ParseError,
    canonical_form,
    coefficients,
    hadamard,
    monoid_equal,
    normalize,
    suite_names,
    zero_set,
)
from ._fimalg import run_suite as _run_suite
from ._fimalg import vn_rank as _vn_rank

__all__ = [
    "ParseError",
    "canonical_form",
    "coefficients",
    "hadamard",
    "monoid_equal",
    "normalize",
    "rank",
    "run_suite",
    "suite_names",
    "zero_set",
]


def rank(expr, T=64):
    """vn_rank of an expression; rationals come back as Fraction."""
    r = _vn_rank(expr, T)
    r["partial"] = Fraction(r["partial"])
    r["tail"] = Fraction(r["tail"])
    if r["exact"] is not None:
        r["exact"] = Fraction(r["exact"])
    return r


def run_suite(name, T=64):
    return json.loads(_run_suite(name, T))
