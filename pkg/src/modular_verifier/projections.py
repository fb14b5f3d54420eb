"""
Mod-24 projections and the lift of a weight from Z/qZ to Z/24qZ.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.ring_core.errors import PreconditionError
from src.ring_core.weights import ResidueWeight, WeightRole, as_value_array

logger = logging.getLogger(__name__)

PROJECTION_MODULUS = 24


@dataclass(frozen=True, eq=False)
class Mod24Projection:
    """
    Class averages a(k) = (24/q) * sum_{x = k mod 24} w(x).

    Values are exact Fractions when the source weight was exact.
    """

    values: np.ndarray
    source_modulus: int

    def __post_init__(self):
        if len(self.values) != PROJECTION_MODULUS:
            raise ValueError(f"Projection needs 24 values, got {len(self.values)}")
        arr = np.array(self.values, copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def is_exact(self) -> bool:
        return self.values.dtype == object

    def __getitem__(self, k: int):
        return self.values[int(k) % PROJECTION_MODULUS]

    def total(self):
        if self.is_exact:
            return sum(self.values, Fraction(0))
        return float(np.sum(self.values))

    def spread(self):
        """sum_k (a(k) - a(k)^2); zero exactly when every a(k) is 0 or 1."""
        if self.is_exact:
            return sum((v - v * v for v in self.values), Fraction(0))
        return float(np.sum(self.values - self.values ** 2))

    def as_weight(self) -> ResidueWeight:
        return ResidueWeight(PROJECTION_MODULUS, self.values, WeightRole.WEIGHT)


def project_mod24(w: ResidueWeight) -> Mod24Projection:
    """
    Average a weight on Z/qZ over the residue classes mod 24.

    Args:
        w: Weight on Z/qZ with 24 | q

    Returns:
        Mod24Projection

    Raises:
        PreconditionError: q is not a multiple of 24
    """
    q = w.modulus
    if q % PROJECTION_MODULUS != 0:
        logger.error(f"project_mod24 called with q={q}")
        raise PreconditionError("mod-24 projection needs 24 | q", {"q": q})

    blocks = w.values.reshape(q // PROJECTION_MODULUS, PROJECTION_MODULUS)
    if w.is_exact:
        scale = Fraction(PROJECTION_MODULUS, q)
        sums = [sum(blocks[:, k], Fraction(0)) * scale for k in range(PROJECTION_MODULUS)]
        values = as_value_array(sums)
    else:
        values = blocks.sum(axis=0) * (PROJECTION_MODULUS / q)
    return Mod24Projection(values=values, source_modulus=q)


def lift_to_24q(w: ResidueWeight) -> ResidueWeight:
    """
    Lift w to Z/24qZ by w~(x) = w(x mod q).

    Preserves the mean and the normalized weighted square count.
    """
    lifted = np.tile(w.values, PROJECTION_MODULUS)
    return ResidueWeight(w.modulus * PROJECTION_MODULUS, lifted, w.role)
