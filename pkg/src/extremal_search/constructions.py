"""
Named square-avoiding constructions.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.extremal_search.residue_sets import ResidueSet, avoids_squares, avoids_squares_naive

logger = logging.getLogger(__name__)

# (name, q, A, B, note)
_CONSTRUCTIONS: Tuple[Tuple[str, int, Tuple[int, ...], Tuple[int, ...], str], ...] = (
    (
        "mod3_singleton",
        3,
        (1,),
        (1,),
        "n = 1 mod 3 on both sides; sums are 2 mod 3, never a square",
    ),
    (
        "sumset_mod32",
        32,
        (1, 5, 9, 13, 14, 17, 21, 25, 26, 29, 30),
        (1, 5, 9, 13, 14, 17, 21, 25, 26, 29, 30),
        "A + A avoids squares; density 11/32",
    ),
    (
        "mod8_pair",
        8,
        (0, 1, 5),
        (2, 5, 6),
        "bipartite pair of density 3/8 each",
    ),
)


@dataclass(frozen=True)
class KnownConstruction:
    name: str
    q: int
    A: ResidueSet
    B: ResidueSet
    verified: bool
    note: str = ""

    @property
    def density(self) -> float:
        return min(len(self.A), len(self.B)) / self.q

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "q": self.q,
            "A": self.A.elements(),
            "B": self.B.elements(),
            "verified": self.verified,
            "density": self.density,
            "note": self.note,
        }


def known_constructions() -> List[KnownConstruction]:
    """
    The classical constructions, each rechecked by mask and by double loop.
    """
    out = []
    for name, q, a, b, note in _CONSTRUCTIONS:
        A = ResidueSet.from_residues(q, a)
        B = ResidueSet.from_residues(q, b)
        verified = avoids_squares(A, B) and avoids_squares_naive(A, B)
        if not verified:
            logger.error(f"Construction {name} does not avoid squares")
        out.append(KnownConstruction(name, q, A, B, verified, note))
    return out
