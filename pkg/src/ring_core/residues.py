"""
Residues and quadratic-residue profiles over Z/qZ.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Modulus:
    """A positive modulus q; residues are canonicalized to {0, ..., q-1}."""

    q: int

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, (int, np.integer)):
            raise TypeError(f"Modulus must be an integer, got {type(self.q).__name__}")
        if self.q < 1:
            raise ValueError(f"Modulus must be >= 1, got {self.q}")
        object.__setattr__(self, "q", int(self.q))

    def canonical(self, x: int) -> int:
        return int(x) % self.q

    def divides(self, n: int) -> bool:
        return n % self.q == 0

    def __int__(self) -> int:
        return self.q


ModulusLike = Union[int, Modulus]


def as_modulus(q: ModulusLike) -> Modulus:
    return q if isinstance(q, Modulus) else Modulus(q)


@dataclass(frozen=True)
class QRProfile:
    """
    The function f_q(t) = #{x in Z/qZ : x^2 = t}.

    Counts are exact integers; their total is q and the support is exactly
    the set of squares mod q.
    """

    modulus: int
    counts: Tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.modulus:
            raise ValueError(
                f"QRProfile needs {self.modulus} counts, got {len(self.counts)}"
            )

    def __getitem__(self, t: int) -> int:
        return self.counts[int(t) % self.modulus]

    def __len__(self) -> int:
        return self.modulus

    def is_square(self, t: int) -> bool:
        return self[t] > 0

    def support(self) -> Tuple[int, ...]:
        return tuple(t for t, c in enumerate(self.counts) if c > 0)

    def total(self) -> int:
        return sum(self.counts)

    def as_array(self) -> np.ndarray:
        arr = np.asarray(self.counts, dtype=np.int64)
        arr.flags.writeable = False
        return arr


@lru_cache(maxsize=256)
def _profile_counts(q: int) -> Tuple[int, ...]:
    x = np.arange(q, dtype=np.int64)
    squares = (x * x) % q
    return tuple(int(c) for c in np.bincount(squares, minlength=q))


def qr_profile(q: ModulusLike) -> QRProfile:
    """
    Tally squares modulo q.

    Args:
        q: Modulus (>= 1)

    Returns:
        QRProfile with counts[t] = #{x : x^2 = t mod q}
    """
    modulus = as_modulus(q)
    if modulus.q > 3_000_000_000:
        # x*x would overflow int64
        raise ValueError(f"Modulus too large for profile tabulation: {modulus.q}")
    return QRProfile(modulus=modulus.q, counts=_profile_counts(modulus.q))
