"""
Residue sets as integer bitmasks and square-avoidance tests.

Bit t of ``mask`` is set when residue t belongs to the set.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Tuple

from src.ring_core.errors import ModulusMismatchError
from src.ring_core.residues import ModulusLike, as_modulus, qr_profile

logger = logging.getLogger(__name__)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def rotate(mask: int, shift: int, q: int) -> int:
    """Mask of {x + shift : x in mask} in Z/qZ."""
    shift %= q
    if shift == 0:
        return mask
    full = (1 << q) - 1
    return ((mask << shift) | (mask >> (q - shift))) & full


def lex_less(x: int, y: int) -> bool:
    """
    Compare two equal-size masks by their sorted element lists.

    The first differing position is decided by the smallest residue in the
    symmetric difference; the set holding it is the smaller one.
    """
    diff = x ^ y
    if diff == 0:
        return False
    return bool(x & (diff & -diff))


@dataclass(frozen=True)
class ResidueSet:
    """A subset of Z/qZ."""

    q: int
    mask: int

    def __post_init__(self):
        modulus = as_modulus(self.q)
        object.__setattr__(self, "q", modulus.q)
        if not 0 <= self.mask < (1 << modulus.q):
            raise ValueError(f"mask out of range for q={modulus.q}")

    @classmethod
    def from_residues(cls, q: ModulusLike, residues: Iterable[int]) -> "ResidueSet":
        modulus = as_modulus(q)
        mask = 0
        for r in residues:
            mask |= 1 << modulus.canonical(r)
        return cls(modulus.q, mask)

    @classmethod
    def empty(cls, q: ModulusLike) -> "ResidueSet":
        return cls(as_modulus(q).q, 0)

    @classmethod
    def full(cls, q: ModulusLike) -> "ResidueSet":
        modulus = as_modulus(q)
        return cls(modulus.q, (1 << modulus.q) - 1)

    def elements(self) -> List[int]:
        return [t for t in range(self.q) if self.mask >> t & 1]

    def __len__(self) -> int:
        return popcount(self.mask)

    def __contains__(self, t: int) -> bool:
        return bool(self.mask >> (int(t) % self.q) & 1)

    def __iter__(self):
        return iter(self.elements())

    def translate(self, shift: int) -> "ResidueSet":
        return ResidueSet(self.q, rotate(self.mask, shift, self.q))

    def negate(self) -> "ResidueSet":
        return ResidueSet.from_residues(self.q, (-t for t in self.elements()))

    def complement(self) -> "ResidueSet":
        return ResidueSet(self.q, ((1 << self.q) - 1) & ~self.mask)

    def issubset(self, other: "ResidueSet") -> bool:
        _require_same_modulus(self, other, "issubset")
        return self.mask & ~other.mask == 0

    def __repr__(self) -> str:
        return f"ResidueSet(q={self.q}, {self.elements()})"


def _require_same_modulus(A: ResidueSet, B: ResidueSet, operation: str):
    if A.q != B.q:
        raise ModulusMismatchError(A.q, B.q, operation)


@lru_cache(maxsize=128)
def _qr_mask(q: int) -> int:
    mask = 0
    for t in qr_profile(q).support():
        mask |= 1 << t
    return mask


@lru_cache(maxsize=128)
def forbidden_masks(q: int) -> Tuple[int, ...]:
    """Entry a is the mask of QR - a: the partners b with a + b a square."""
    qr = _qr_mask(q)
    return tuple(rotate(qr, -a, q) for a in range(q))


def qr_set(q: ModulusLike) -> ResidueSet:
    """Set of squares mod q, 0 included."""
    modulus = as_modulus(q)
    return ResidueSet(modulus.q, _qr_mask(modulus.q))


def forbidden_mask(A: ResidueSet) -> int:
    """Mask of QR - A."""
    table = forbidden_masks(A.q)
    out = 0
    for a in A.elements():
        out |= table[a]
    return out


def avoids_squares(A: ResidueSet, B: ResidueSet) -> bool:
    """
    True when no a + b (a in A, b in B) is a square mod q.

    Raises:
        ModulusMismatchError: A and B live on different moduli
    """
    _require_same_modulus(A, B, "avoids_squares")
    return forbidden_mask(A) & B.mask == 0


def avoids_squares_naive(A: ResidueSet, B: ResidueSet) -> bool:
    """Double-loop reference for ``avoids_squares``."""
    _require_same_modulus(A, B, "avoids_squares_naive")
    profile = qr_profile(A.q)
    for a in A.elements():
        for b in B.elements():
            if profile.is_square(a + b):
                return False
    return True


def extremal_partner(A: ResidueSet) -> ResidueSet:
    """
    Largest B with A + B free of squares: Z/qZ minus (QR - A).

    Every B avoiding squares with A is a subset of the result. The empty
    set forbids nothing, so its partner is all of Z/qZ.
    """
    full = (1 << A.q) - 1
    return ResidueSet(A.q, full & ~forbidden_mask(A))
