"""
Unit tests for square-pair counting and exponential sums over squares.
"""

import math

import numpy as np
import pytest

from src.integer_lab.counting import (
    count_square_pairs,
    count_square_pairs_naive,
    major_arc_neighbours,
    minor_arc_check,
    square_dot,
    square_exponential_sum,
    squares_between,
)
from src.integer_lab.sets import IntegerSet, uniform_random_set


@pytest.fixture
def extremal_sets():
    """Mod-8 extremal lifts on [1, 1000]."""
    return (
        IntegerSet.residue_lift(1000, [0, 1, 5], 8),
        IntegerSet.residue_lift(1000, [2, 5, 6], 8),
    )


def test_squares_between():
    """Test the square ranges."""
    assert squares_between(2, 20).tolist() == [4, 9, 16]
    assert squares_between(0, 4).tolist() == [1, 4]
    assert squares_between(10, 15).tolist() == []


def test_count_first_ten():
    """Test A = B = {1..10}."""
    A = IntegerSet.full(10)
    assert count_square_pairs(A, A) == 16
    assert count_square_pairs_naive(A, A) == 16


def test_count_extremal_lifts_zero(extremal_sets):
    """Test the extremal construction has no square sums."""
    assert count_square_pairs(*extremal_sets) == 0


def test_count_empty():
    """Test empty sets."""
    assert count_square_pairs(IntegerSet.empty(50), IntegerSet.full(50)) == 0


def test_count_different_ranges():
    """Test sets on different N."""
    A = IntegerSet.from_elements(5, [5])
    B = IntegerSet.from_elements(20, [4, 11, 20])
    assert count_square_pairs(A, B) == count_square_pairs_naive(A, B) == 3


def test_count_matches_oracle_small():
    """Test agreement with the double loop on short ranges."""
    rng = np.random.default_rng(9)
    for _ in range(10):
        N = int(rng.integers(1, 300))
        A = uniform_random_set(N, float(rng.uniform(0, 1)), rng)
        B = uniform_random_set(N, float(rng.uniform(0, 1)), rng)
        assert count_square_pairs(A, B) == count_square_pairs_naive(A, B)


@pytest.mark.slow
def test_count_matches_oracle():
    """Test agreement with the double loop on 50 instances with N <= 2000."""
    rng = np.random.default_rng(2000)
    for _ in range(50):
        N = int(rng.integers(1, 2001))
        A = uniform_random_set(N, float(rng.uniform(0.05, 0.6)), rng)
        B = uniform_random_set(N, float(rng.uniform(0.05, 0.6)), rng)
        assert count_square_pairs(A, B) == count_square_pairs_naive(A, B)


def test_count_parallel_matches_serial():
    """Test chunked counting in a process pool."""
    rng = np.random.default_rng(4)
    A = uniform_random_set(5000, 0.4, rng)
    B = uniform_random_set(5000, 0.4, rng)
    assert count_square_pairs(A, B, workers=2) == count_square_pairs(A, B)


def test_square_dot_offsets():
    """Test shifted supports against a direct sum."""
    f = np.array([1, 2, 3], dtype=np.int64)  # values at 5, 6, 7
    g = np.array([1, 1], dtype=np.int64)     # values at 2, 3
    direct = sum(
        f[i] * g[j] for i in range(3) for j in range(2) if math.isqrt(7 + i + j) ** 2 == 7 + i + j
    )
    assert square_dot(f, 5, g, 2) == direct == 5


def test_exponential_sum_at_zero():
    """Test theta = 0 counts the squares."""
    assert square_exponential_sum(99, 0) == 9
    assert square_exponential_sum(10 ** 8, 0.0) == complex(10 ** 4, 0)


def test_exponential_sum_at_half():
    """Test the alternating sum stays bounded by 1."""
    for N in (1, 10, 1000, 12345):
        assert abs(square_exponential_sum(N, 0.5)) <= 1 + 1e-9


def test_minor_arc_sample():
    """Test theta = sqrt(2) - 1 at N = 10^6, lam = 0.2."""
    report = minor_arc_check(10 ** 6, math.sqrt(2) - 1, 0.2)
    assert report.side_conditions["minor_arc"]
    assert report.rhs == pytest.approx(1000.0)
    assert report.passed


def test_major_arc_detected():
    """Test a rational frequency with small denominator is flagged."""
    assert (1, 3) in major_arc_neighbours(10 ** 6, 1 / 3, 0.2)
    report = minor_arc_check(10 ** 6, 1 / 3, 0.2)
    assert not report.side_conditions["minor_arc"]
    assert not report.passed
