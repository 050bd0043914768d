"""Exact desk-scale Iwasawa theory: p-adic series, Fitting and congruence ideals,
sl2 symmetric-power combinatorics, L-invariant matrices and Hecke transfers."""
from iwk.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
