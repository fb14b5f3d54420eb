"""
Exhaustive check of the norm bounds over 0/1 vectors.

Every a in {0,1}^24 with a(0) = 1 and at most eight further ones is
scanned, and h(a, phi) and h(a, phi~) are compared with 18. Cases are
ordered by the number of extra ones, then lexicographically by position,
so extremizer lists come out in a fixed order.

Exact mode scales phi to integers: with D the common denominator,
24*D*(a*psi)(t) = P_t + R_t*sqrt(5) for integers P_t, R_t computed by a
matrix product. Positive parts use the exact vectorized sign test, and
h(a, psi) = (X + Y*sqrt(5)) / (24*D) with X, Y integer sums. The maximum
is preselected in floating point and decided in Q(sqrt 5). When the
scaled tables are too large for int64 sums and squares the same scan runs
on Python integers.
"""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.modular_verifier.reports import render_number
from src.optimization_verifier.phi import SIZE, NonnegVector24, PhiVector
from src.optimization_verifier.quad5 import SIGN_ARRAY_LIMIT, SQRT5_FLOAT, Quad5, sign_array

logger = logging.getLogger(__name__)

MAX_EXTRA_ONES = 8
NORM_BOUND = 18
FLOAT_THRESHOLD = 17.99
CHUNK_ROWS = 100_000
PRESELECT_SLACK = 1e-6


class EnumerationMode(Enum):
    """Arithmetic used by the scan"""
    EXACT = "exact"
    FLOAT = "float"


def case_count(max_extra: int = MAX_EXTRA_ONES) -> int:
    return sum(math.comb(SIZE - 1, k) for k in range(max_extra + 1))


def case_matrix(k: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """
    Rows start..stop-1 of the size-k block: a(0) = 1 plus k ones chosen from
    positions 1..23 in lexicographic order.
    """
    combos = list(itertools.islice(itertools.combinations(range(1, SIZE), k), start, stop))
    rows = np.zeros((len(combos), SIZE), dtype=np.int8)
    rows[:, 0] = 1
    if k and combos:
        idx = np.asarray(combos, dtype=np.int64)
        rows[np.repeat(np.arange(len(combos)), k), idx.ravel()] = 1
    return rows


def _tasks(max_extra: int, chunk_rows: int) -> List[Tuple[int, int, int]]:
    tasks = []
    for k in range(max_extra + 1):
        total = math.comb(SIZE - 1, k)
        for start in range(0, total, chunk_rows):
            tasks.append((k, start, min(start + chunk_rows, total)))
    return tasks


@dataclass
class _PsiScan:
    best: Any
    extremizers: List[Tuple[int, ...]]


def _exact_scan(rows: np.ndarray, P: np.ndarray, R: np.ndarray, target: int) -> _PsiScan:
    if P.dtype == object:
        A = rows.astype(object)
        Pv = A @ P
        Rv = A @ R
    else:
        A = rows.astype(np.float64)
        # entries below 2^53: the float products are exact
        Pv = np.rint(A @ P).astype(np.int64)
        Rv = np.rint(A @ R).astype(np.int64)
    positive = sign_array(Pv, Rv) > 0
    X = np.where(positive, Pv, 0).sum(axis=1)
    Y = np.where(positive, Rv, 0).sum(axis=1)

    approx = X.astype(np.float64) + Y.astype(np.float64) * SQRT5_FLOAT
    top = approx.max()
    candidates = np.nonzero(approx >= top - PRESELECT_SLACK * max(1.0, abs(top)))[0]
    best = max(Quad5(int(X[i]), int(Y[i])) for i in candidates)

    hits = np.nonzero((X == target) & (Y == 0))[0]
    return _PsiScan(best=(best.p, best.r), extremizers=[tuple(rows[i]) for i in hits])


def _float_scan(rows: np.ndarray, M: np.ndarray, threshold: float) -> _PsiScan:
    # sums run over j, then over t, in index order; the float maximum
    # carries the same rounding as a plain double loop
    conv = np.zeros((len(rows), SIZE), dtype=np.float64)
    for j in range(SIZE):
        conv += rows[:, j, None] * M[j]
    conv /= SIZE
    values = np.zeros(len(rows), dtype=np.float64)
    for t in range(SIZE):
        values += np.maximum(conv[:, t], 0.0)
    hits = np.nonzero(values >= threshold)[0]
    return _PsiScan(best=float(values.max()), extremizers=[tuple(rows[i]) for i in hits])


def _fast_tables(P: np.ndarray, R: np.ndarray, target: int):
    """
    int64 copies of P and R when every convolution sum and square in the
    scan fits, else None.
    """
    bound = SIZE * max(abs(int(x)) for x in itertools.chain(P.flat, R.flat))
    if bound > SIGN_ARRAY_LIMIT or abs(target) > SIGN_ARRAY_LIMIT * SIZE:
        return None
    return P.astype(np.int64), R.astype(np.int64)


def _scan_task(task) -> Tuple[_PsiScan, _PsiScan]:
    (k, start, stop), mode, tables, cutoff = task
    rows = case_matrix(k, start, stop)
    if mode is EnumerationMode.EXACT:
        (P1, R1), (P2, R2) = tables
        return _exact_scan(rows, P1, R1, cutoff), _exact_scan(rows, P2, R2, cutoff)
    M1, M2 = tables
    return _float_scan(rows, M1, cutoff), _float_scan(rows, M2, cutoff)


@dataclass
class EnumerationResult:
    """Maxima of h over the scanned cases and the vectors attaining the bound."""
    case_count: int
    max_phi: Any
    max_phi_tilde: Any
    extremizers_phi: List[NonnegVector24] = field(default_factory=list)
    extremizers_tilde: List[NonnegVector24] = field(default_factory=list)
    mode: EnumerationMode = EnumerationMode.EXACT
    norm_bound: int = NORM_BOUND

    @property
    def bound_holds(self) -> bool:
        """Both maxima are at most the bound (exactly, in exact mode)."""
        if self.mode is EnumerationMode.EXACT:
            return self.max_phi <= self.norm_bound and self.max_phi_tilde <= self.norm_bound
        return (
            self.max_phi <= self.norm_bound + 1e-9
            and self.max_phi_tilde <= self.norm_bound + 1e-9
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mode": self.mode.value,
            "case_count": self.case_count,
            "norm_bound": self.norm_bound,
            "max_phi": render_number(self.max_phi),
            "max_phi_tilde": render_number(self.max_phi_tilde),
            "bound_holds": self.bound_holds,
            "extremizers_phi": [a.to_list() for a in self.extremizers_phi],
            "extremizers_tilde": [a.to_list() for a in self.extremizers_tilde],
        }


def enumerate_norm_bound(
    mode: EnumerationMode = EnumerationMode.EXACT,
    workers: int = 1,
    phi: Optional[PhiVector] = None,
    threshold: float = FLOAT_THRESHOLD,
    norm_bound: int = NORM_BOUND,
    max_extra: int = MAX_EXTRA_ONES,
    chunk_rows: int = CHUNK_ROWS,
) -> EnumerationResult:
    """
    Scan all 0/1 vectors with a(0) = 1 and at most ``max_extra`` further ones.

    Args:
        mode: EXACT decides maxima and extremizers in Q(sqrt 5); FLOAT
            reproduces the double-precision computation with a threshold
        workers: Processes; chunks merge in enumeration order
        phi: Test function (standard phi when None); its reflection is
            scanned alongside
        threshold: Extremizer cutoff in FLOAT mode
        norm_bound: Bound compared against; exact extremizers attain it
        max_extra: Largest number of ones besides a(0)
        chunk_rows: Cases per chunk

    Returns:
        EnumerationResult
    """
    phi = phi or PhiVector.standard()
    # phi(23 - t), a translate of the reflection; h(a, psi) is unchanged
    tilde = phi.reflect().shift(-1)

    if mode is EnumerationMode.EXACT:
        P1, R1, d1 = phi.component_tables()
        P2, R2, d2 = tilde.component_tables()
        # d1 == d2: reflection permutes the same values
        cutoff = norm_bound * SIZE * d1
        fast = (_fast_tables(P1, R1, cutoff), _fast_tables(P2, R2, cutoff))
        if any(t is None for t in fast):
            logger.warning(
                f"phi has denominator {d1}; int64 tables would overflow, "
                f"scanning with Python integers"
            )
            tables = ((P1, R1), (P2, R2))
        else:
            tables = fast
    else:
        tables = (phi.float_table(), tilde.float_table())
        cutoff = threshold

    tasks = [(t, mode, tables, cutoff) for t in _tasks(max_extra, chunk_rows)]
    logger.info(
        f"Enumerating {case_count(max_extra)} cases in {len(tasks)} chunks "
        f"({mode.value} mode, {workers} worker(s))"
    )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_task, tasks))
    else:
        results = [_scan_task(t) for t in tasks]

    maxima = []
    extremizers = []
    for side in (0, 1):
        scans = [r[side] for r in results]
        if mode is EnumerationMode.EXACT:
            best = max(Quad5(*s.best) for s in scans) / (SIZE * d1)
        else:
            best = max(s.best for s in scans)
        maxima.append(best)
        extremizers.append(
            [NonnegVector24(tuple(int(v) for v in row)) for s in scans for row in s.extremizers]
        )

    result = EnumerationResult(
        case_count=case_count(max_extra),
        max_phi=maxima[0],
        max_phi_tilde=maxima[1],
        extremizers_phi=extremizers[0],
        extremizers_tilde=extremizers[1],
        mode=mode,
        norm_bound=norm_bound,
    )
    logger.info(
        f"Enumeration done: max h(a, phi) = {float(result.max_phi):.15g}, "
        f"max h(a, phi~) = {float(result.max_phi_tilde):.15g}, "
        f"{len(result.extremizers_phi)}+{len(result.extremizers_tilde)} extremizers"
    )
    return result
