"""
Finite integer sets A ⊆ [1, N] and seeded generators for them.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union

import numpy as np

from src.ring_core.errors import PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class IntegerSet:
    """
    A subset of [1, N] stored as a boolean membership array.

    ``membership[n - 1]`` is True iff n belongs to the set.
    """

    N: int
    membership: np.ndarray

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be positive, got {self.N}")
        arr = np.array(self.membership, dtype=bool, copy=True)
        if arr.shape != (self.N,):
            raise ValueError(f"membership must have length {self.N}, got {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "membership", arr)

    @classmethod
    def from_elements(cls, N: int, elements: Iterable[int]) -> "IntegerSet":
        items = np.fromiter((int(x) for x in elements), dtype=np.int64)
        if items.size and (items.min() < 1 or items.max() > N):
            raise PreconditionError(
                f"elements must lie in [1, {N}]",
                {"min": int(items.min()), "max": int(items.max())},
            )
        membership = np.zeros(N, dtype=bool)
        membership[items - 1] = True
        return cls(N, membership)

    @classmethod
    def from_file(cls, path: Union[str, Path], N: Optional[int] = None) -> "IntegerSet":
        """
        Read newline-delimited integers; blank lines and ``#`` comments are skipped.

        Args:
            path: Input file
            N: Ambient size; defaults to the largest element
        """
        values = []
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                text = line.split("#", 1)[0].strip()
                if not text:
                    continue
                try:
                    values.append(int(text))
                except ValueError:
                    raise PreconditionError(
                        f"line {lineno} of {path} is not an integer", {"line": lineno}
                    ) from None
        if N is None:
            if not values:
                raise PreconditionError(f"{path} holds no elements and no N was given")
            N = max(values)
        logger.info(f"Read {len(values)} elements from {path} (N={N})")
        return cls.from_elements(N, values)

    @classmethod
    def full(cls, N: int) -> "IntegerSet":
        return cls(N, np.ones(N, dtype=bool))

    @classmethod
    def empty(cls, N: int) -> "IntegerSet":
        return cls(N, np.zeros(N, dtype=bool))

    @classmethod
    def residue_lift(cls, N: int, residues: Iterable[int], modulus: int) -> "IntegerSet":
        """{n <= N : n mod modulus in residues}"""
        chosen = np.zeros(modulus, dtype=bool)
        chosen[[int(r) % modulus for r in residues]] = True
        return cls(N, chosen[np.arange(1, N + 1) % modulus])

    def __len__(self) -> int:
        return int(np.count_nonzero(self.membership))

    def __contains__(self, n: int) -> bool:
        return 1 <= n <= self.N and bool(self.membership[n - 1])

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.membership) + 1

    def density(self) -> Fraction:
        return Fraction(len(self), self.N)

    def indicator(self) -> np.ndarray:
        """1_A on [1, N] as int64 (index n - 1)."""
        return self.membership.astype(np.int64)

    def __repr__(self) -> str:
        return f"IntegerSet(N={self.N}, size={len(self)})"


def uniform_random_set(N: int, density: float, rng: np.random.Generator) -> IntegerSet:
    """Exactly ceil(density * N) elements of [1, N], chosen uniformly."""
    if not 0.0 <= density <= 1.0:
        raise PreconditionError("density must lie in [0, 1]", {"density": density})
    size = min(N, math.ceil(density * N))
    chosen = rng.choice(N, size=size, replace=False)
    membership = np.zeros(N, dtype=bool)
    membership[chosen] = True
    return IntegerSet(N, membership)


def boosted_lift(
    N: int,
    residues: Sequence[int],
    modulus: int,
    density,
    rng: np.random.Generator,
) -> IntegerSet:
    """
    The residue lift plus uniformly chosen extra elements.

    Extras are drawn from the complement until the size reaches
    ceil(density * N); a lift that is already dense enough is returned as is.
    """
    base = IntegerSet.residue_lift(N, residues, modulus)
    target = min(N, math.ceil(Fraction(density) * N))
    missing = target - len(base)
    if missing <= 0:
        return base
    free = np.flatnonzero(~base.membership)
    extra = rng.choice(free, size=missing, replace=False)
    membership = base.membership.copy()
    membership[extra] = True
    logger.debug(f"Boosted lift of {list(residues)} mod {modulus} by {missing} elements")
    return IntegerSet(N, membership)


class GeneratorKind(Enum):
    """How a SetGenerator builds its set"""
    FULL = "full"
    RESIDUE_LIFT = "residue_lift"
    BOOSTED_LIFT = "boosted_lift"
    UNIFORM = "uniform"
    FILE = "file"


@dataclass
class SetGenerator:
    """
    Reproducible recipe for an IntegerSet.

    ``params`` by kind:
        residue_lift: residues, modulus
        boosted_lift: residues, modulus, density
        uniform: density
        file: path
    """

    kind: GeneratorKind
    params: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None

    def generate(self, N: int) -> IntegerSet:
        p = self.params
        if self.kind is GeneratorKind.FULL:
            return IntegerSet.full(N)
        if self.kind is GeneratorKind.RESIDUE_LIFT:
            return IntegerSet.residue_lift(N, p["residues"], p["modulus"])
        if self.kind is GeneratorKind.FILE:
            return IntegerSet.from_file(p["path"], N)

        rng = np.random.default_rng(self.seed)
        if self.kind is GeneratorKind.BOOSTED_LIFT:
            return boosted_lift(N, p["residues"], p["modulus"], p["density"], rng)
        return uniform_random_set(N, float(p["density"]), rng)

    def to_dict(self) -> Dict[str, Any]:
        params = {
            k: (str(v) if isinstance(v, (Fraction, Path)) else v) for k, v in self.params.items()
        }
        return {"kind": self.kind.value, "params": params, "seed": self.seed}
