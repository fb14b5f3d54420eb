"""
Search for residue pairs (A, B) with A + B free of squares mod q that
maximize min(|A|, |B|).

B is never enumerated: for fixed A the best partner is extremal_partner(A),
so the search runs over subsets A only. Small moduli are scanned in full,
moduli up to 24 with 0 in A fixed (the objective is translation invariant),
and larger moduli by depth-first branch and bound under a node budget.

Subset scans run on numpy tables built by doubling: the forbidden mask of
index i + 2^j is the forbidden mask of i OR the mask of the j-th residue.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.ring_core.errors import PreconditionError, SearchBudgetExceeded
from src.ring_core.residues import ModulusLike, as_modulus
from src.extremal_search.residue_sets import (
    ResidueSet,
    avoids_squares,
    avoids_squares_naive,
    extremal_partner,
    forbidden_masks,
    lex_less,
    popcount,
)

logger = logging.getLogger(__name__)

LOW_BITS = 16


class SearchMode(Enum):
    """Enumeration strategy"""
    AUTO = "auto"
    EXHAUSTIVE = "exhaustive"
    REDUCED = "reduced"
    BRANCH_AND_BOUND = "branch_and_bound"


@dataclass(frozen=True)
class SearchBudget:
    """Limits on the search; moduli above ``reduced_max_q`` use branch and bound."""
    exhaustive_max_q: int = 16
    reduced_max_q: int = 24
    bnb_max_nodes: int = 2_000_000

    @classmethod
    def from_config(cls, config: Dict) -> "SearchBudget":
        return cls(
            exhaustive_max_q=config.get("exhaustive_max_q", 16),
            reduced_max_q=config.get("reduced_max_q", 24),
            bnb_max_nodes=config.get("bnb_max_nodes", 2_000_000),
        )


@dataclass(frozen=True)
class SearchWitness:
    """
    A pair (A, B) with its objective min(|A|, |B|).

    ``certified`` is set only after an independent double-loop recheck;
    ``optimal`` is cleared for witnesses from an interrupted search.
    """
    q: int
    A: ResidueSet
    B: ResidueSet
    objective: int
    certified: bool
    optimal: bool = True

    @classmethod
    def certify(cls, A: ResidueSet, B: ResidueSet, optimal: bool = True) -> "SearchWitness":
        certified = avoids_squares_naive(A, B) and avoids_squares(A, B)
        return cls(
            q=A.q,
            A=A,
            B=B,
            objective=min(len(A), len(B)),
            certified=certified,
            optimal=optimal,
        )

    def translate(self, x: int) -> "SearchWitness":
        """(A + x, B - x); the sumset and so the certificate are unchanged."""
        return SearchWitness(
            q=self.q,
            A=self.A.translate(x),
            B=self.B.translate(-x),
            objective=self.objective,
            certified=self.certified,
            optimal=self.optimal,
        )

    def translate_equivalent(self, other: "SearchWitness") -> bool:
        if self.q != other.q:
            return False
        return any(
            self.A.translate(x) == other.A and self.B.translate(-x) == other.B
            for x in range(self.q)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q,
            "A": self.A.elements(),
            "B": self.B.elements(),
            "objective": self.objective,
            "certified": self.certified,
            "optimal": self.optimal,
        }


# Best candidate as (objective, |A|, A mask); larger objective wins, then
# smaller |A|, then the lexicographically smaller A.
Candidate = Tuple[int, int, int]


def _better(a: Optional[Candidate], b: Optional[Candidate]) -> Optional[Candidate]:
    if a is None:
        return b
    if b is None:
        return a
    if a[0] != b[0]:
        return a if a[0] > b[0] else b
    if a[1] != b[1]:
        return a if a[1] < b[1] else b
    return a if not lex_less(b[2], a[2]) else b


@lru_cache(maxsize=1)
def _popcount16() -> np.ndarray:
    table = np.zeros(1 << 16, dtype=np.int16)
    for bit in range(16):
        table[1 << bit:1 << (bit + 1)] = table[: 1 << bit] + 1
    return table


def _popcount_array(values: np.ndarray, q: int) -> np.ndarray:
    table = _popcount16()
    out = np.zeros(values.shape, dtype=np.int16)
    for shift in range(0, q, 16):
        out += table[(values >> shift) & 0xFFFF]
    return out


def subset_tables(masks: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """
    OR-tables over all subsets of ``masks``.

    Returns:
        (forbidden, sizes) where entry i covers the subset given by the bits
        of i: forbidden[i] is the OR of masks[j] over set bits j, sizes[i]
        the number of set bits
    """
    forbidden = np.zeros(1, dtype=np.int64)
    sizes = np.zeros(1, dtype=np.int16)
    for m in masks:
        forbidden = np.concatenate([forbidden, forbidden | np.int64(m)])
        sizes = np.concatenate([sizes, sizes + 1])
    return forbidden, sizes


def _scan_task(task: Tuple[int, bool, int, Tuple[int, ...]]) -> Optional[Candidate]:
    """Best candidate over the subsets whose high index bits lie in ``highs``."""
    q, reduced, low_count, highs = task
    table = forbidden_masks(q)
    residues = list(range(1, q)) if reduced else list(range(q))
    base_forbidden = table[0] if reduced else 0
    base_size = 1 if reduced else 0

    low_forbidden, low_sizes = subset_tables([table[r] for r in residues[:low_count]])
    high_residues = residues[low_count:]

    best: Optional[Candidate] = None
    for h in highs:
        h_forbidden = base_forbidden
        for j, r in enumerate(high_residues):
            if h >> j & 1:
                h_forbidden |= table[r]
        h_size = base_size + popcount(h)

        forbidden = low_forbidden | np.int64(h_forbidden)
        size_a = low_sizes + h_size
        size_b = q - _popcount_array(forbidden, q)
        objective = np.minimum(size_a, size_b)

        top = int(objective.max())
        if best is not None and top < best[0]:
            continue
        hits = np.nonzero(objective == top)[0]
        smallest = int(size_a[hits].min())
        hits = hits[size_a[hits] == smallest]

        for low in hits:
            index = (h << low_count) | int(low)
            mask = (1 | (index << 1)) if reduced else index
            best = _better(best, (top, smallest, mask))
    return best


def _scan(q: int, reduced: bool, workers: int) -> Candidate:
    free = q - 1 if reduced else q
    low_count = min(free, LOW_BITS)
    high_total = 1 << (free - low_count)

    pieces = max(1, min(high_total, workers * 4))
    step = -(-high_total // pieces)
    tasks = [
        (q, reduced, low_count, tuple(range(start, min(start + step, high_total))))
        for start in range(0, high_total, step)
    ]
    logger.info(
        f"Scanning 2^{free} subsets for q={q} "
        f"({'0 in A fixed' if reduced else 'all subsets'}, {len(tasks)} chunks)"
    )

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_task, tasks))
    else:
        results = [_scan_task(t) for t in tasks]

    best: Optional[Candidate] = None
    for result in results:
        best = _better(best, result)
    return best


def _witness_from_mask(q: int, mask: int, optimal: bool = True) -> SearchWitness:
    A = ResidueSet(q, mask)
    return SearchWitness.certify(A, extremal_partner(A), optimal=optimal)


class _NodeLimit(Exception):
    pass


def _branch_and_bound(q: int, max_nodes: int) -> SearchWitness:
    """
    Depth-first search over A containing 0, residues added in increasing
    order. A node is pruned when neither |A| plus the remaining residues nor
    the current partner size can beat the best objective.
    """
    table = forbidden_masks(q)
    best = [(min(1, q - popcount(table[0])), 1, 1)]
    nodes = [0]

    def visit(mask: int, forbidden: int, size: int, start: int) -> None:
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise _NodeLimit()
        partner = q - popcount(forbidden)
        current = min(size, partner)
        if current > best[0][0]:
            best[0] = (current, size, mask)
        if min(size + (q - start), partner) <= best[0][0]:
            return
        for r in range(start, q):
            visit(mask | (1 << r), forbidden | table[r], size + 1, r + 1)

    try:
        visit(1, table[0], 1, 1)
    except _NodeLimit:
        witness = _witness_from_mask(q, best[0][2], optimal=False)
        logger.warning(
            f"Branch and bound stopped after {max_nodes} nodes at q={q}; "
            f"best objective so far {witness.objective}"
        )
        raise SearchBudgetExceeded(
            f"node budget {max_nodes} exhausted for q={q}", best=witness
        )
    logger.info(f"Branch and bound finished for q={q} after {nodes[0]} nodes")
    return _witness_from_mask(q, best[0][2])


def _resolve_mode(q: int, budget: SearchBudget, mode: SearchMode) -> SearchMode:
    if mode is SearchMode.AUTO:
        if q <= budget.exhaustive_max_q:
            return SearchMode.EXHAUSTIVE
        if q <= budget.reduced_max_q:
            return SearchMode.REDUCED
        return SearchMode.BRANCH_AND_BOUND
    limit = {
        SearchMode.EXHAUSTIVE: budget.exhaustive_max_q,
        SearchMode.REDUCED: budget.reduced_max_q,
    }.get(mode)
    if limit is not None and q > limit:
        raise SearchBudgetExceeded(
            f"{mode.value} search refused for q={q} (limit {limit})", best=None
        )
    return mode


def max_bipartite_density(
    q: ModulusLike,
    budget: Optional[SearchBudget] = None,
    mode: SearchMode = SearchMode.AUTO,
    workers: int = 1,
) -> SearchWitness:
    """
    Maximize min(|A|, |B|) over square-avoiding pairs in Z/qZ.

    Args:
        q: Modulus
        budget: Search limits (defaults apply when None)
        mode: Enumeration strategy; AUTO picks by q
        workers: Processes for the subset scan

    Returns:
        Certified SearchWitness; among optima the smallest A, then the
        lexicographically smallest A, is reported

    Raises:
        SearchBudgetExceeded: the requested mode is not allowed for q, or
            branch and bound ran out of nodes (best witness attached)
    """
    q = as_modulus(q).q
    budget = budget or SearchBudget()
    resolved = _resolve_mode(q, budget, mode)
    if q > 62 and resolved is not SearchMode.BRANCH_AND_BOUND:
        raise PreconditionError("subset scans need q <= 62", {"q": q})

    if resolved is SearchMode.BRANCH_AND_BOUND:
        return _branch_and_bound(q, budget.bnb_max_nodes)

    objective, size, mask = _scan(q, resolved is SearchMode.REDUCED, workers)
    witness = _witness_from_mask(q, mask)
    logger.info(f"q={q}: objective {witness.objective}, A={witness.A.elements()}")
    return witness


def optimal_witnesses(q: ModulusLike, budget: Optional[SearchBudget] = None) -> List[SearchWitness]:
    """
    Every optimal pair that cannot be enlarged on either side.

    Scans all 2^q subsets, so q is limited to the exhaustive budget.

    Returns:
        Witnesses (A, B) with B = extremal_partner(A), A = extremal_partner(B)
        and min(|A|, |B|) optimal, ordered by the bits of A
    """
    q = as_modulus(q).q
    budget = budget or SearchBudget()
    if q > budget.exhaustive_max_q:
        raise SearchBudgetExceeded(
            f"optimal_witnesses needs q <= {budget.exhaustive_max_q}, got {q}"
        )
    table = forbidden_masks(q)
    forbidden, sizes = subset_tables(list(table))
    objective = np.minimum(sizes, q - _popcount_array(forbidden, q))
    top = int(objective.max())

    witnesses = []
    for index in np.nonzero(objective == top)[0]:
        A = ResidueSet(q, int(index))
        B = extremal_partner(A)
        if extremal_partner(B) == A:
            witnesses.append(SearchWitness.certify(A, B))
    return witnesses
