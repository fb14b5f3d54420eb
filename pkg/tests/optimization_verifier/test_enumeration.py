"""
Unit tests for the exhaustive 0/1 enumeration.

The full scans are marked slow.
"""

import itertools
from fractions import Fraction

import pytest

from src.optimization_verifier.enumeration import (
    EnumerationMode,
    EnumerationResult,
    case_count,
    case_matrix,
    enumerate_norm_bound,
)
from src.optimization_verifier.phi import NonnegVector24, PhiVector, h_functional
from src.optimization_verifier.quad5 import Quad5

PHI_EXTREMIZERS = [(0, 1, 4), (0, 3, 7), (0, 4, 5)]
TILDE_EXTREMIZERS = [(0, 1, 5), (0, 3, 4), (0, 4, 7)]


@pytest.fixture(scope="module")
def full_exact():
    """Full exact enumeration fixture, shared by the slow tests."""
    return enumerate_norm_bound(EnumerationMode.EXACT)


def test_case_count():
    """Test the number of scanned vectors."""
    assert case_count() == 880970
    assert case_count(0) == 1
    assert case_count(2) == 1 + 23 + 253


def test_case_matrix_order():
    """Test rows are lexicographic with a(0) = 1."""
    rows = case_matrix(2, 0, 3)
    assert rows.shape == (3, 24)
    assert (rows[:, 0] == 1).all()
    assert [list(r.nonzero()[0]) for r in rows] == [[0, 1, 2], [0, 1, 3], [0, 1, 4]]
    assert case_matrix(0).tolist() == [[1] + [0] * 23]


def test_small_scan_matches_direct_evaluation():
    """Test the vectorized maxima against h evaluated one vector at a time."""
    phi = PhiVector.standard()
    result = enumerate_norm_bound(max_extra=1)
    direct = max(
        h_functional(NonnegVector24(tuple(int(v) for v in row)), phi)
        for k in (0, 1)
        for row in case_matrix(k)
    )
    assert result.case_count == 24
    assert result.max_phi == direct
    assert result.extremizers_phi == []


def test_chunking_does_not_change_result():
    """Test chunk boundaries merge in order."""
    whole = enumerate_norm_bound(max_extra=2)
    split = enumerate_norm_bound(max_extra=2, chunk_rows=37)
    assert whole.max_phi == split.max_phi
    assert whole.max_phi_tilde == split.max_phi_tilde


def test_float_and_exact_agree_small():
    """Test both arithmetic modes on a short scan."""
    exact = enumerate_norm_bound(max_extra=3)
    approx = enumerate_norm_bound(EnumerationMode.FLOAT, max_extra=3)
    assert approx.max_phi == pytest.approx(float(exact.max_phi), abs=1e-9)
    assert approx.max_phi_tilde == pytest.approx(float(exact.max_phi_tilde), abs=1e-9)


def test_large_denominator_matches_direct_evaluation():
    """Test a twelve-digit constant is scanned exactly."""
    phi = PhiVector.build(constant=Fraction(5334333333333, 10**12))
    tilde = phi.reflect()

    result = enumerate_norm_bound(phi=phi, max_extra=2)

    vectors = [
        NonnegVector24.from_support((0,) + extra)
        for k in range(3)
        for extra in itertools.combinations(range(1, 24), k)
    ]
    assert result.case_count == len(vectors)
    assert result.max_phi == max(h_functional(a, phi) for a in vectors)
    assert result.max_phi_tilde == max(h_functional(a, tilde) for a in vectors)


def test_reflected_scan_matches_reflection():
    """Test the dual scan agrees with h against phi(-t)."""
    result = enumerate_norm_bound(max_extra=2)
    tilde = PhiVector.standard().reflect()
    vectors = [
        NonnegVector24.from_support((0,) + extra)
        for k in range(3)
        for extra in itertools.combinations(range(1, 24), k)
    ]
    assert result.max_phi_tilde == max(h_functional(a, tilde) for a in vectors)


def test_bound_holds_exact_flag():
    """Test the flag on hand-built results."""
    ok = EnumerationResult(case_count=1, max_phi=Quad5(18), max_phi_tilde=Quad5(17))
    bad = EnumerationResult(
        case_count=1, max_phi=Quad5(18, Fraction(1, 10**9)), max_phi_tilde=Quad5(17)
    )
    assert ok.bound_holds
    assert not bad.bound_holds
    assert ok.to_dict()["max_phi"]["provenance"] == "exact"


def test_perturbed_phi_breaks_bound_at_extremizer():
    """Test raising the constant of phi pushes h past 18."""
    phi = PhiVector.build(constant=Fraction(16, 3) + Fraction(1, 1000))
    a = NonnegVector24.lift_up([0, 1, 4])
    assert h_functional(a, phi) > 18


@pytest.mark.slow
def test_full_exact_enumeration(full_exact):
    """Test the exact maxima and the extremizer lists."""
    assert full_exact.case_count == 880970
    assert full_exact.max_phi == Quad5(18, 0)
    assert full_exact.max_phi_tilde == Quad5(18, 0)
    assert full_exact.bound_holds
    assert full_exact.extremizers_phi == [NonnegVector24.lift_up(s) for s in PHI_EXTREMIZERS]
    assert full_exact.extremizers_tilde == [
        NonnegVector24.lift_up(s) for s in TILDE_EXTREMIZERS
    ]


@pytest.mark.slow
def test_full_float_enumeration(full_exact):
    """Test double precision reproduces the maxima and the same extremizers."""
    approx = enumerate_norm_bound(EnumerationMode.FLOAT)
    # rounding of the plain double loop, 4e-15 above the exact maximum
    assert approx.max_phi == 18.000000000000004
    assert approx.max_phi_tilde == 18.000000000000004
    assert approx.extremizers_phi == full_exact.extremizers_phi
    assert approx.extremizers_tilde == full_exact.extremizers_tilde


@pytest.mark.slow
def test_full_enumeration_perturbed_phi_fails():
    """Test the bound is violated when phi is nudged up."""
    phi = PhiVector.build(constant=Fraction(16, 3) + Fraction(1, 1000))
    result = enumerate_norm_bound(phi=phi)
    assert not result.bound_holds
    assert result.max_phi > 18


@pytest.mark.slow
def test_parallel_enumeration_matches(full_exact):
    """Test two workers give the same result as one."""
    parallel = enumerate_norm_bound(workers=2)
    assert parallel.max_phi == full_exact.max_phi
    assert parallel.extremizers_phi == full_exact.extremizers_phi
    assert parallel.extremizers_tilde == full_exact.extremizers_tilde
