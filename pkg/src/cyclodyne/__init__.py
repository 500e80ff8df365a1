"""Ding-Helleseth generalized cyclotomic sequences of period pq and their 2-adic complexity."""

from cyclodyne.errors import LemmaViolation, NotReducible, TheoremViolation
from cyclodyne.ntcore import PeriodParams, make_params

__all__ = [
    "LemmaViolation",
    "NotReducible",
    "PeriodParams",
    "TheoremViolation",
    "make_params",
]

__version__ = "0.1.0"
