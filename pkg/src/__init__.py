"""
Sumset Squares - verification toolkit for squares in sumsets

Checks the modular and integer statements about dense sets whose sumset
must contain squares: quadratic-residue arithmetic, Fourier identities,
extremal residue pairs, the exact 24-point optimization and desk-scale
integer experiments.
"""

__version__ = "1.0.0"
__author__ = "kabir308"

from src.integration.system import SumsetSquaresSystem

__all__ = ["SumsetSquaresSystem"]
