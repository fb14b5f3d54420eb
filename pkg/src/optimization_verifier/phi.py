"""
Vectors on Z/24Z: the test function phi, non-negative inputs, the
positive-part convolution functional h and the norm N.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from src.ring_core.errors import PreconditionError
from src.ring_core.residues import qr_profile
from src.optimization_verifier.quad5 import Quad5, quad_sign

logger = logging.getLogger(__name__)

SIZE = 24
NORM_WEIGHT = 9  # N(a) = max(9 |a|_inf, |a|_1)

PHI_CONSTANT = Fraction(16, 3)
PHI_COEFFICIENT = Fraction(2)


@dataclass(frozen=True)
class PhiVector:
    """
    phi(t) = c - s*sqrt(5)*f_24(t) on Z/24Z; the standard choice is
    c = 16/3, s = 2.
    """

    values: Tuple[Quad5, ...]

    def __post_init__(self):
        if len(self.values) != SIZE:
            raise ValueError(f"PhiVector needs 24 values, got {len(self.values)}")

    @classmethod
    def build(cls, constant=PHI_CONSTANT, coefficient=PHI_COEFFICIENT) -> "PhiVector":
        constant, coefficient = Fraction(constant), Fraction(coefficient)
        profile = qr_profile(SIZE)
        return cls(tuple(Quad5(constant, -coefficient * profile[t]) for t in range(SIZE)))

    @classmethod
    def standard(cls) -> "PhiVector":
        return cls.build()

    def __getitem__(self, t: int) -> Quad5:
        return self.values[int(t) % SIZE]

    def reflect(self) -> "PhiVector":
        """t -> phi(-t)"""
        return PhiVector(tuple(self.values[(-t) % SIZE] for t in range(SIZE)))

    def total(self) -> Quad5:
        return sum(self.values, Quad5(0))

    def as_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.values], dtype=np.float64)

    def component_tables(self) -> Tuple[np.ndarray, np.ndarray, int]:
        """
        Integer tables for vectorized exact convolution.

        Returns:
            (P, R, D) with P[j, t] + R[j, t]*sqrt(5) = D * psi(t - j) and D
            the common denominator of all components; P and R hold Python
            ints (object dtype) so large denominators stay exact
        """
        denominator = 1
        for v in self.values:
            for d in (v.p.denominator, v.r.denominator):
                denominator = denominator * d // math.gcd(denominator, d)
        P = np.zeros((SIZE, SIZE), dtype=object)
        R = np.zeros((SIZE, SIZE), dtype=object)
        for j in range(SIZE):
            for t in range(SIZE):
                v = self.values[(t - j) % SIZE]
                P[j, t] = int(v.p * denominator)
                R[j, t] = int(v.r * denominator)
        return P, R, denominator

    def shift(self, s: int) -> "PhiVector":
        """t -> psi(t - s)"""
        return PhiVector(tuple(self.values[(t - s) % SIZE] for t in range(SIZE)))

    def float_table(self) -> np.ndarray:
        """M[j, t] = psi(t - j) as floats."""
        values = self.as_array()
        idx = (np.arange(SIZE)[None, :] - np.arange(SIZE)[:, None]) % SIZE
        return values[idx]


def _is_exact(v) -> bool:
    return isinstance(v, Rational) and not isinstance(v, bool)


@dataclass(frozen=True)
class NonnegVector24:
    """
    A non-negative vector a(0..23).

    Entries are Fractions when every input is rational, floats otherwise.
    """

    values: Tuple

    def __post_init__(self):
        vals = tuple(self.values)
        if len(vals) != SIZE:
            raise ValueError(f"NonnegVector24 needs 24 values, got {len(vals)}")
        if all(_is_exact(v) for v in vals):
            vals = tuple(Fraction(v) for v in vals)
        else:
            vals = tuple(float(v) for v in vals)
        negative = [v for v in vals if v < 0]
        if negative:
            raise PreconditionError(
                "entries must be non-negative", {"min_entry": float(min(negative))}
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls) -> "NonnegVector24":
        return cls((0,) * SIZE)

    @classmethod
    def ones(cls) -> "NonnegVector24":
        return cls((1,) * SIZE)

    @classmethod
    def constant(cls, c) -> "NonnegVector24":
        return cls((c,) * SIZE)

    @classmethod
    def from_support(cls, support: Iterable[int]) -> "NonnegVector24":
        chosen = {int(t) % SIZE for t in support}
        return cls(tuple(1 if t in chosen else 0 for t in range(SIZE)))

    @classmethod
    def lift_up(cls, residues: Iterable[int], period: int = 8) -> "NonnegVector24":
        """a(i) = 1 iff i mod period lies in ``residues``."""
        if SIZE % period != 0:
            raise ValueError(f"period must divide 24, got {period}")
        chosen = {int(r) % period for r in residues}
        return cls(tuple(1 if t % period in chosen else 0 for t in range(SIZE)))

    @property
    def is_exact(self) -> bool:
        return isinstance(self.values[0], Fraction)

    def __getitem__(self, t: int):
        return self.values[int(t) % SIZE]

    def shift(self, s: int) -> "NonnegVector24":
        """t -> a(t - s)"""
        return NonnegVector24(tuple(self.values[(t - s) % SIZE] for t in range(SIZE)))

    def reflect(self) -> "NonnegVector24":
        return NonnegVector24(tuple(self.values[(-t) % SIZE] for t in range(SIZE)))

    def scale(self, gamma) -> "NonnegVector24":
        return NonnegVector24(tuple(gamma * v for v in self.values))

    def __add__(self, other: "NonnegVector24") -> "NonnegVector24":
        return NonnegVector24(tuple(x + y for x, y in zip(self.values, other.values)))

    def support(self) -> List[int]:
        return [t for t, v in enumerate(self.values) if v != 0]

    def total(self):
        return sum(self.values, Fraction(0) if self.is_exact else 0.0)

    def sum_squares(self):
        return sum((v * v for v in self.values), Fraction(0) if self.is_exact else 0.0)

    def linf(self):
        return max(self.values)

    def as_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.values], dtype=np.float64)

    def to_list(self) -> List:
        """Entries as ints where integral, else str/float."""
        out = []
        for v in self.values:
            if isinstance(v, Fraction):
                out.append(int(v) if v.denominator == 1 else str(v))
            else:
                out.append(v)
        return out


def convolve_with(a: NonnegVector24, psi: PhiVector) -> List:
    """
    (a*psi)(t) = (1/24) sum_j a(j) psi(t - j).

    Exact Quad5 values for exact a, floats otherwise.
    """
    if a.is_exact:
        out = []
        for t in range(SIZE):
            p = Fraction(0)
            r = Fraction(0)
            for j, aj in enumerate(a.values):
                if aj:
                    v = psi[t - j]
                    p += aj * v.p
                    r += aj * v.r
            out.append(Quad5(p / SIZE, r / SIZE))
        return out
    conv = a.as_array() @ psi.float_table() / SIZE
    return [float(x) for x in conv]


def positive_part(values: Sequence) -> List:
    out = []
    for v in values:
        if isinstance(v, Quad5):
            out.append(v if quad_sign(v.p, v.r) > 0 else Quad5(0))
        else:
            out.append(max(v, 0.0))
    return out


def h_functional(a: NonnegVector24, psi: PhiVector) -> Union[Quad5, float]:
    """
    ||(a*psi)_+||_1 = sum_t max(0, (1/24) sum_j a(j) psi(t - j)).

    Exact Quad5 for exact a; float otherwise.
    """
    parts = positive_part(convolve_with(a, psi))
    if a.is_exact:
        return sum(parts, Quad5(0))
    return float(sum(parts))


def norm_N(a: NonnegVector24):
    """N(a) = max(9 |a|_inf, |a|_1)."""
    return max(NORM_WEIGHT * a.linf(), a.total())
