"""Exact numerics for Bridgeland stability on Gushel-Mukai fourfolds."""

from .exact import GaussRat, InputError, rat
from .chern import ChernSigma, ChernY, TwistedClass
from .tilt import MukaiVector, TiltParams
from .lattice import IntegralLattice, LatticeVector

__version__ = "0.1.0"

__all__ = [
    "GaussRat", "InputError", "rat", "ChernSigma", "ChernY", "TwistedClass",
    "MukaiVector", "TiltParams", "IntegralLattice", "LatticeVector",
]
