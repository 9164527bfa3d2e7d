"""Exact Givental graph sums for [C^3/Z_3] and local P^2."""
from .exactalg import Cyc, ZETA, RingElem, Series

__version__ = "0.1.0"
__all__ = ["Cyc", "ZETA", "RingElem", "Series"]
