"""
Counting sums that land on perfect squares.

All counts are evaluated square by square: for each m^2 in the range of
a + b, the contribution sum_a f(a) g(m^2 - a) is a single dot product of
two aligned slices. This costs O(N^{3/2}) instead of the O(N^2) double loop
and, for integer input, is exact.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from src.ring_core.errors import PreconditionError
from src.modular_verifier.reports import CheckKind, VerificationReport
from src.integer_lab.sets import IntegerSet

logger = logging.getLogger(__name__)

MINOR_ARC_FACTOR = 5  # |sum| <= 5 * lam * sqrt(N) off the major arcs


def squares_between(low: int, high: int) -> np.ndarray:
    """All m^2 with m >= 1 and low <= m^2 <= high."""
    if high < max(low, 1):
        return np.zeros(0, dtype=np.int64)
    first = max(1, math.isqrt(max(low - 1, 0)) + 1)
    last = math.isqrt(high)
    m = np.arange(first, last + 1, dtype=np.int64)
    return m * m


def square_dot(
    f: np.ndarray,
    f_start: int,
    g: np.ndarray,
    g_start: int,
    squares: Optional[np.ndarray] = None,
):
    """
    sum over squares s of (f*g)(s) = sum_s sum_a f(a) g(s - a).

    ``f[i]`` is the value at integer f_start + i, likewise for g. Object
    arrays (Fractions) and integer arrays are summed exactly.

    Args:
        f: Values of the first function on a contiguous range
        f_start: Integer at index 0 of f
        g: Values of the second function on a contiguous range
        g_start: Integer at index 0 of g
        squares: Squares to evaluate; defaults to every square in range

    Returns:
        The sum, in the dtype of the inputs
    """
    f_end = f_start + len(f) - 1
    g_end = g_start + len(g) - 1
    if squares is None:
        squares = squares_between(f_start + g_start, f_end + g_end)
    total = 0
    for s in squares.tolist():
        lo = max(f_start, s - g_end)
        hi = min(f_end, s - g_start)
        if lo > hi:
            continue
        left = f[lo - f_start : hi - f_start + 1]
        # g at s - a for a = lo..hi, i.e. indices descending
        right = g[s - hi - g_start : s - lo - g_start + 1][::-1]
        total = total + np.dot(left, right)
    return total


def _count_chunk(task: Tuple[np.ndarray, np.ndarray, np.ndarray]) -> int:
    a, b, squares = task
    return int(square_dot(a, 1, b, 1, squares))


def count_square_pairs(A: IntegerSet, B: IntegerSet, workers: int = 1, chunks: int = 8) -> int:
    """
    #{(a, b) in A x B : a + b is a perfect square}.

    The squares in [2, N_A + N_B] are split into ordered chunks whose
    partial counts add up; with ``workers > 1`` the chunks run in a
    process pool.
    """
    a, b = A.indicator(), B.indicator()
    squares = squares_between(2, A.N + B.N)
    if workers > 1 and len(squares) > 1:
        parts = np.array_split(squares, min(chunks, len(squares)))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_count_chunk, [(a, b, p) for p in parts]))
    else:
        total = _count_chunk((a, b, squares))
    logger.debug(f"{total} square pairs for |A|={len(A)}, |B|={len(B)}")
    return total


def count_square_pairs_naive(A: IntegerSet, B: IntegerSet) -> int:
    """Double loop over A x B; the reference for count_square_pairs."""
    count = 0
    b_elements = B.elements().tolist()
    for x in A.elements().tolist():
        for y in b_elements:
            s = x + y
            r = math.isqrt(s)
            if r * r == s:
                count += 1
    return count


def square_exponential_sum(N: int, theta: float) -> complex:
    """sum over m >= 1 with m^2 <= N of e(-theta m^2)."""
    if N < 1:
        raise PreconditionError("N must be positive", {"N": N})
    m = np.arange(1, math.isqrt(N) + 1, dtype=np.int64)
    if theta == 0:
        return complex(len(m), 0.0)
    frac = np.mod(float(theta) * (m * m).astype(np.float64), 1.0)
    return complex(np.exp(-2j * np.pi * frac).sum())


def _torus_distance(x: float) -> float:
    return abs(x - round(x))


def major_arc_neighbours(N: int, theta: float, lam: float) -> List[Tuple[int, int]]:
    """Fractions a/q with a, q <= lam^-2 lying within lam^-2 / N of theta."""
    limit = int(math.floor(lam ** -2))
    width = lam ** -2 / N
    close = []
    for q in range(1, limit + 1):
        for a in range(0, q + 1):
            if math.gcd(a, q) == 1 and _torus_distance(theta - a / q) <= width:
                close.append((a, q))
    return close


def minor_arc_check(N: int, theta: float, lam: float) -> VerificationReport:
    """
    Spot check of |sum_{m^2 <= N} e(-theta m^2)| <= 5 lam sqrt(N).

    The side condition ``minor_arc`` records whether theta avoids every
    major arc around a/q with a, q <= lam^-2; off the minor arcs the bound
    is not expected to hold and the report fails.
    """
    if lam <= 0:
        raise PreconditionError("lam must be positive", {"lam": lam})
    neighbours = major_arc_neighbours(N, theta, lam)
    value = square_exponential_sum(N, theta)
    return VerificationReport(
        lemma="minor_arc_estimate",
        kind=CheckKind.UPPER_BOUND,
        lhs=abs(value),
        rhs=MINOR_ARC_FACTOR * lam * math.sqrt(N),
        tolerance=0.0,
        side_conditions={"minor_arc": not neighbours},
        data={"N": N, "theta": theta, "lam": lam, "major_arc_neighbours": neighbours[:5]},
    )
