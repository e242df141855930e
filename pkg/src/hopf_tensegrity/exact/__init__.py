"""Exact arithmetic kernel: rationals, polynomials, resultants, root isolation."""

from fractions import Fraction

from .interval import Interval, interval_eval
from .poly import MPoly, as_fraction
from .resultant import bareiss_det, det3, divides, resultant, sylvester_matrix
from . import upoly
from .sturm import IsolatingInterval, refine, sturm_isolate

BigRational = Fraction

__all__ = [
    "BigRational",
    "Fraction",
    "Interval",
    "IsolatingInterval",
    "MPoly",
    "as_fraction",
    "bareiss_det",
    "det3",
    "divides",
    "interval_eval",
    "refine",
    "resultant",
    "sturm_isolate",
    "sylvester_matrix",
    "upoly",
]
