"""
Normalized convolution and discrete Fourier transform on Z/qZ.

    (f*g)(x) = (1/q) sum_a f(a) g(x - a)
    f^(r)    = (1/q) sum_x f(x) e(-rx/q)

The transform is a direct O(q^2) summation; moduli in this toolkit stay
within a few thousand.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from src.ring_core.errors import ModulusMismatchError
from src.ring_core.residues import QRProfile
from src.ring_core.weights import ResidueWeight, WeightRole

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9

ResidueFunction = Union[ResidueWeight, QRProfile]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Fourier coefficients coeffs[r] = w^(r) of a function on Z/qZ."""

    modulus: int
    coeffs: np.ndarray

    def __post_init__(self):
        if len(self.coeffs) != self.modulus:
            raise ValueError(
                f"Spectrum on Z/{self.modulus}Z needs {self.modulus} coefficients"
            )
        arr = np.array(self.coeffs, dtype=np.complex128, copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    def __getitem__(self, r: int) -> complex:
        return complex(self.coeffs[int(r) % self.modulus])

    def energy(self) -> float:
        """sum_r |w^(r)|^2"""
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def at_negative(self) -> np.ndarray:
        """Array whose entry m is w^(-m)."""
        idx = (-np.arange(self.modulus)) % self.modulus
        return self.coeffs[idx]


def _check_same_modulus(f, g, operation: str):
    if f.modulus != g.modulus:
        logger.error(f"{operation}: modulus mismatch {f.modulus} vs {g.modulus}")
        raise ModulusMismatchError(f.modulus, g.modulus, operation)


def _exact_convolve(f: np.ndarray, g: np.ndarray, q: int) -> np.ndarray:
    scale = Fraction(1, q)
    out = []
    for x in range(q):
        acc = Fraction(0)
        for a in range(q):
            fa = f[a]
            if fa:
                acc += fa * g[(x - a) % q]
        out.append(acc * scale)
    return np.array(out, dtype=object)


def _float_convolve(f: np.ndarray, g: np.ndarray, q: int) -> np.ndarray:
    full = np.convolve(f, g)
    out = full[:q].copy()
    out[: q - 1] += full[q:]
    return out / q


def cyclic_convolve(f: ResidueWeight, g: ResidueWeight) -> ResidueWeight:
    """
    Normalized cyclic convolution.

    Exact when both inputs are exact; the result carries the signed role.

    Raises:
        ModulusMismatchError: f and g live on different moduli
    """
    _check_same_modulus(f, g, "cyclic_convolve")
    q = f.modulus
    if f.is_exact and g.is_exact:
        values = _exact_convolve(f.values, g.values, q)
    else:
        values = _float_convolve(f.as_array(), g.as_array(), q)
    return ResidueWeight(modulus=q, values=values, role=WeightRole.SIGNED)


def _character_table(q: int) -> np.ndarray:
    k = np.arange(q, dtype=np.int64)
    phase = np.outer(k, k) % q
    return np.exp(-2j * np.pi * phase / q)


def dft(w: ResidueFunction) -> Spectrum:
    """
    Direct discrete Fourier transform with 1/q normalization.

    Args:
        w: ResidueWeight or QRProfile

    Returns:
        Spectrum with coeffs[r] = (1/q) sum_x w(x) e(-rx/q)
    """
    q = w.modulus
    values = np.asarray(w.as_array(), dtype=np.float64)
    coeffs = _character_table(q) @ values / q
    return Spectrum(modulus=q, coeffs=coeffs)


def weighted_square_count(
    wA: ResidueWeight,
    wB: ResidueWeight,
    profile: QRProfile,
):
    """
    Weighted count of squares in the weighted sumset:
    sum_t (wA*wB)(t) f_q(t).

    Returns a Fraction for exact weights, a float otherwise.

    Raises:
        ModulusMismatchError: the three inputs do not share a modulus
    """
    _check_same_modulus(wA, wB, "weighted_square_count")
    _check_same_modulus(wA, profile, "weighted_square_count")
    conv = cyclic_convolve(wA, wB)
    if conv.is_exact:
        return sum(
            (conv.values[t] * c for t, c in enumerate(profile.counts) if c),
            Fraction(0),
        )
    return float(np.dot(conv.values, profile.as_array()))
