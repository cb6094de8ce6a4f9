"""Exact computations for the Jacobians of y^r = x^(r-1)(x+1)(x+t) over F_q(t^(1/d))."""

from .cyclotomic import CycInt, cyclotomic_poly
from .ffield import FieldTable, build_field

__all__ = ["CycInt", "FieldTable", "build_field", "cyclotomic_poly"]
__version__ = "0.1.0"
