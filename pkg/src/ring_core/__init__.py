"""
Ring Core - arithmetic over Z/qZ

Quadratic-residue profiles, residue weights, normalized cyclic convolution
and the discrete Fourier transform shared by every other package.
"""

from src.ring_core.errors import (
    SumsetSquaresError,
    ModulusMismatchError,
    PreconditionError,
    SearchBudgetExceeded,
)
from src.ring_core.residues import Modulus, QRProfile, qr_profile
from src.ring_core.weights import ResidueWeight, WeightRole, random_weight
from src.ring_core.fourier import (
    Spectrum,
    cyclic_convolve,
    dft,
    weighted_square_count,
)

__all__ = [
    "SumsetSquaresError",
    "ModulusMismatchError",
    "PreconditionError",
    "SearchBudgetExceeded",
    "Modulus",
    "QRProfile",
    "qr_profile",
    "ResidueWeight",
    "WeightRole",
    "random_weight",
    "Spectrum",
    "cyclic_convolve",
    "dft",
    "weighted_square_count",
]
