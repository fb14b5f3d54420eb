"""
Residue weights w : Z/qZ -> [0,1] and their signed counterparts.

Values are held either as float64 arrays or, for exact inputs (integers and
Fractions), as object arrays of Fraction so that rational identities can be
checked without rounding.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

import numpy as np

from src.ring_core.errors import PreconditionError
from src.ring_core.residues import ModulusLike, as_modulus

logger = logging.getLogger(__name__)

RANGE_SLACK = 1e-12


class WeightRole(Enum):
    """Range contract of a residue weight"""
    WEIGHT = "weight"  # values in [0, 1]
    SIGNED = "signed"  # values in [-1, 1]


def _is_exact_scalar(v) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


def _freeze(values) -> np.ndarray:
    arr = np.array(values, copy=True)
    arr.flags.writeable = False
    return arr


def as_value_array(values: Iterable) -> np.ndarray:
    """Object array of Fractions when every entry is rational, float64 otherwise."""
    items = list(values.tolist() if isinstance(values, np.ndarray) else values)
    if items and all(_is_exact_scalar(v) for v in items):
        return np.array([Fraction(v) for v in items], dtype=object)
    return np.asarray([float(v) for v in items], dtype=np.float64)


@dataclass(frozen=True, eq=False)
class ResidueWeight:
    """
    A function on Z/qZ with a range contract.

    Immutable: the value array is read-only after construction.
    """

    modulus: int
    values: np.ndarray
    role: WeightRole = WeightRole.WEIGHT

    def __post_init__(self):
        if not isinstance(self.values, np.ndarray) or self.values.dtype not in (
            np.float64,
            object,
        ):
            object.__setattr__(self, "values", as_value_array(self.values))
        if len(self.values) != self.modulus:
            raise ValueError(
                f"ResidueWeight on Z/{self.modulus}Z needs {self.modulus} values, "
                f"got {len(self.values)}"
            )
        low = 0.0 if self.role is WeightRole.WEIGHT else -1.0
        if self.is_exact:
            bad = [v for v in self.values if v < low or v > 1]
        else:
            arr = self.values
            bad = arr[(arr < low - RANGE_SLACK) | (arr > 1 + RANGE_SLACK)].tolist()
        if bad:
            raise ValueError(
                f"{self.role.value} values must lie in [{low:g}, 1]; "
                f"found {bad[:3]}"
            )
        object.__setattr__(self, "values", _freeze(self.values))

    @classmethod
    def from_values(
        cls,
        values: Iterable,
        role: WeightRole = WeightRole.WEIGHT,
    ) -> "ResidueWeight":
        arr = as_value_array(values)
        return cls(modulus=len(arr), values=arr, role=role)

    @classmethod
    def constant(cls, q: ModulusLike, c=1) -> "ResidueWeight":
        m = as_modulus(q)
        return cls.from_values([c] * m.q)

    @classmethod
    def indicator(cls, q: ModulusLike, residues: Iterable[int]) -> "ResidueWeight":
        m = as_modulus(q)
        support = {m.canonical(r) for r in residues}
        return cls.from_values([1 if x in support else 0 for x in range(m.q)])

    @classmethod
    def delta(cls, q: ModulusLike, at: int = 0) -> "ResidueWeight":
        return cls.indicator(q, [at])

    @property
    def is_exact(self) -> bool:
        return self.values.dtype == object

    def __len__(self) -> int:
        return self.modulus

    def __getitem__(self, x: int):
        return self.values[int(x) % self.modulus]

    def as_array(self) -> np.ndarray:
        """Values as float64 (a copy for exact weights)."""
        if self.is_exact:
            return np.array([float(v) for v in self.values], dtype=np.float64)
        return self.values

    def total(self):
        if self.is_exact:
            return sum(self.values, Fraction(0))
        return float(np.sum(self.values))

    def mean(self):
        return self.total() / self.modulus

    def support(self) -> Sequence[int]:
        return [x for x in range(self.modulus) if self.values[x] != 0]

    def reflect(self) -> "ResidueWeight":
        """x -> w(-x)."""
        idx = (-np.arange(self.modulus)) % self.modulus
        return ResidueWeight(self.modulus, self.values[idx], self.role)

    def translate(self, shift: int) -> "ResidueWeight":
        """x -> w(x - shift)."""
        idx = (np.arange(self.modulus) - shift) % self.modulus
        return ResidueWeight(self.modulus, self.values[idx], self.role)

    def __repr__(self) -> str:
        kind = "exact" if self.is_exact else "float"
        return f"ResidueWeight(q={self.modulus}, role={self.role.value}, {kind})"


def random_weight(
    q: ModulusLike,
    rng: np.random.Generator,
    target_mean: Optional[float] = None,
    margin: float = 1e-9,
) -> ResidueWeight:
    """
    Draw i.i.d. uniform [0,1] values and rescale toward 1 to reach a mean.

    The affine map v -> 1 - s(1 - v) keeps values in [0,1] for s <= 1, so the
    rescale only ever lifts the mean. A draw whose mean already exceeds the
    target is returned unchanged. ``margin`` is added to the target so that
    float rounding cannot push the mean below it.

    Args:
        q: Modulus
        rng: Seeded numpy generator
        target_mean: Desired minimum mean, or None for a raw draw
        margin: Extra mean added on top of the target

    Returns:
        Float ResidueWeight
    """
    m = as_modulus(q)
    values = rng.random(m.q)
    if target_mean is not None:
        if not 0.0 <= target_mean <= 1.0:
            raise PreconditionError(
                "target mean must lie in [0, 1]", {"target_mean": target_mean}
            )
        target = min(1.0, target_mean + margin)
        current = float(values.mean())
        if current < target:
            scale = (1.0 - target) / (1.0 - current)
            values = 1.0 - scale * (1.0 - values)
            values = np.clip(values, 0.0, 1.0)
    return ResidueWeight(modulus=m.q, values=values)
