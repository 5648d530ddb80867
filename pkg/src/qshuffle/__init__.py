"""Exact quantum shuffle computations: braided binomials, Nichols algebras,
Hopf bimodules and Yetter-Drinfeld modules over them, fusion, and the rank-one
(p,1) specialization."""

from .coeff import Cyclotomic, q_binom, q_int, q_power
from .braidrep import (Bbin, Bfac, BraidElement, BraidingError, MixedBraiding, Operator,
                       Report, jordanian_plane, matrix_braiding)

__all__ = ["Cyclotomic", "q_binom", "q_int", "q_power", "Bbin", "Bfac", "BraidElement",
           "BraidingError", "MixedBraiding", "Operator", "Report", "jordanian_plane",
           "matrix_braiding"]

__version__ = "0.1.0"
