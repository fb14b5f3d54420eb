"""
Unit tests for the Z/24Z inequality checks and the equality-case analysis.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.ring_core.errors import PreconditionError
from src.optimization_verifier.enumeration import EnumerationResult
from src.optimization_verifier.inequalities import (
    EXTREMAL_A,
    EXTREMAL_B,
    amgm_check,
    convexity_check,
    equality_case_analysis,
    footnote_check,
    homogeneity_check,
    linf_bound_check,
    norm_bound_check,
    prop36_check,
    prop52_check,
    prop53_batch,
    prop53_check,
    shift_invariance_check,
    square_count_24,
)
from src.optimization_verifier.phi import NonnegVector24, PhiVector
from src.optimization_verifier.quad5 import Quad5


@pytest.fixture
def rng():
    """Seeded generator fixture."""
    return np.random.default_rng(2024)


@pytest.fixture
def extremal_pair():
    """Lifted extremal pair fixture."""
    return NonnegVector24.lift_up(EXTREMAL_A), NonnegVector24.lift_up(EXTREMAL_B)


def _unit_box_vector(rng, min_sum):
    """Random [0,1]^24 vector pushed toward 1 until its sum reaches min_sum."""
    values = rng.random(24)
    target = min_sum / 24 + 1e-9
    if values.mean() < target:
        values = 1.0 - (1.0 - target) / (1.0 - values.mean()) * (1.0 - values)
    return NonnegVector24(tuple(np.clip(values, 0.0, 1.0)))


def test_square_count_extremal_pair_is_zero(extremal_pair):
    """Test the extremal pair has no square sums."""
    a, b = extremal_pair
    assert square_count_24(a, b) == 0


def test_square_count_ones():
    """Test the all-ones pair."""
    assert square_count_24(NonnegVector24.ones(), NonnegVector24.ones()) == 24


def test_linf_bound_examples(extremal_pair):
    """Test the positive-part bound on admissible vectors."""
    a, _ = extremal_pair
    assert linf_bound_check(a).passed
    constant = linf_bound_check(NonnegVector24.constant(Fraction(3, 8)))
    assert constant.lhs == Quad5(2, Fraction(-3, 4))
    assert constant.passed
    assert linf_bound_check(NonnegVector24.zeros()).lhs == 0


def test_linf_bound_precondition():
    """Test vectors outside the unit ball of N are refused."""
    with pytest.raises(PreconditionError) as exc:
        linf_bound_check(NonnegVector24.ones())
    assert exc.value.measured["l1"] == 24.0
    with pytest.raises(PreconditionError):
        linf_bound_check(NonnegVector24((2,) + (0,) * 23))


def test_norm_bound_single_vectors(extremal_pair):
    """Test N((a*psi)_+) <= 2 N(a) on a few vectors."""
    a, b = extremal_pair
    phi = PhiVector.standard()
    for vector in (a, b, NonnegVector24.ones(), NonnegVector24.from_support(range(9))):
        assert norm_bound_check(vector, phi).passed
        assert norm_bound_check(vector, phi.reflect()).passed


def test_prop53_examples(extremal_pair):
    """Test zero, constant and extremal inputs."""
    zeros = prop53_check(NonnegVector24.zeros(), NonnegVector24.zeros())
    assert zeros.passed and zeros.data["equality"]

    ones = prop53_check(NonnegVector24.ones(), NonnegVector24.ones())
    assert ones.lhs == 24
    assert ones.rhs == Quad5(0, 8)
    assert ones.passed and not ones.data["equality"]

    extremal = prop53_check(*extremal_pair)
    assert extremal.passed and extremal.data["equality"]


def test_prop53_batch_small(rng):
    """Test a short vectorized batch."""
    A, B = rng.random((500, 24)), rng.random((500, 24))
    report = prop53_batch(A, B, seed=2024)
    assert report.passed
    assert report.data == {"cases": 500, "failures": 0}
    assert report.to_dict()["seed"] == 2024


@pytest.mark.slow
def test_prop53_batch_randomized():
    """Test 100000 seeded pairs, including scaled inputs."""
    rng = np.random.default_rng(53)
    A = rng.random((100_000, 24)) * rng.uniform(0, 3, size=(100_000, 1))
    B = rng.random((100_000, 24)) * rng.uniform(0, 3, size=(100_000, 1))
    report = prop53_batch(A, B, seed=53)
    assert report.passed
    assert report.data["failures"] == 0


def test_prop53_batch_rejects_bad_shapes():
    """Test shape and sign preconditions."""
    with pytest.raises(PreconditionError):
        prop53_batch(np.zeros((3, 24)), np.zeros((2, 24)))
    with pytest.raises(PreconditionError):
        prop53_batch(-np.ones((1, 24)), np.ones((1, 24)))


def test_prop52_equality_at_extremal_pair(extremal_pair):
    """Test both sides vanish exactly."""
    report = prop52_check(*extremal_pair)
    assert report.lhs == 0
    assert report.rhs == 0
    assert report.data["equality"]
    assert report.passed


def test_prop36_all_ones():
    """Test the full vector with the largest admissible epsilon."""
    report = prop36_check(NonnegVector24.ones(), NonnegVector24.ones(), Fraction(15))
    assert report.passed
    assert report.epsilon == 15.0


def test_prop36_random_pairs(rng):
    """Test 1000 random pairs with sums of at least 9.5."""
    for _ in range(1000):
        a, b = _unit_box_vector(rng, 9.5), _unit_box_vector(rng, 9.5)
        report = prop36_check(a, b, 0.5)
        assert report.passed, report.to_dict()


def test_prop36_preconditions(extremal_pair):
    """Test box, epsilon and mass preconditions."""
    a, b = extremal_pair
    with pytest.raises(PreconditionError):
        prop36_check(a, b, Fraction(1, 2))
    with pytest.raises(PreconditionError):
        prop36_check(a, b, Fraction(-1))
    with pytest.raises(PreconditionError):
        prop36_check(a.scale(2), b, 0)


@pytest.mark.parametrize("x", range(8))
@pytest.mark.parametrize("y", range(8))
def test_equality_only_on_matched_translates(x, y):
    """Test equality iff the two translates match."""
    a = NonnegVector24.lift_up([r + x for r in EXTREMAL_A])
    b = NonnegVector24.lift_up([r - y for r in EXTREMAL_B])
    report = prop52_check(a, b)
    assert report.passed
    assert report.data["equality"] == (x == y)


def test_amgm_and_footnote(rng):
    """Test the two algebraic steps on random inputs."""
    for _ in range(200):
        a, b = _unit_box_vector(rng, 9.0), _unit_box_vector(rng, 9.0)
        assert amgm_check(a, b).passed
        eps = float(rng.uniform(0, 5))
        x, y = rng.uniform(9 + eps, 24, size=2)
        assert footnote_check(float(x), float(y), eps).passed


def test_footnote_exact_boundary():
    """Test equality at x = y = 9 with eps = 0."""
    report = footnote_check(Fraction(9), Fraction(9), Fraction(0))
    assert report.lhs == report.rhs == 18
    assert report.passed
    with pytest.raises(PreconditionError):
        footnote_check(Fraction(8), Fraction(10), Fraction(0))


def test_h_structure_checks(rng):
    """Test shift invariance, convexity and homogeneity reports."""
    phi = PhiVector.standard()
    for _ in range(5):
        a = NonnegVector24(tuple(Fraction(int(v), 5) for v in rng.integers(0, 6, size=24)))
        b = NonnegVector24(tuple(Fraction(int(v), 5) for v in rng.integers(0, 6, size=24)))
        assert shift_invariance_check(a, phi, int(rng.integers(1, 24))).passed
        assert convexity_check(a, b, phi).passed
        assert homogeneity_check(a, Fraction(7, 3)).passed


def test_equality_case_analysis_with_known_extremizers():
    """Test the analysis against a hand-built enumeration result."""
    enumeration = EnumerationResult(
        case_count=880970,
        max_phi=Quad5(18),
        max_phi_tilde=Quad5(18),
        extremizers_phi=[NonnegVector24.lift_up(s) for s in [(0, 1, 4), (0, 3, 7), (0, 4, 5)]],
    )
    report = equality_case_analysis(enumeration)
    assert len(report.cases) == 8
    assert all(c.equality and c.partner_unique for c in report.cases)
    assert report.enumeration_translates
    assert report.non_extremal_strict == {"one_element_moved": True, "initial_block": True}
    assert report.passed
    assert report.to_dict()["pass"] is True


def test_equality_case_analysis_detects_missing_extremizer():
    """Test an incomplete extremizer list is flagged."""
    enumeration = EnumerationResult(
        case_count=1,
        max_phi=Quad5(18),
        max_phi_tilde=Quad5(18),
        extremizers_phi=[],
    )
    report = equality_case_analysis(enumeration)
    assert not report.enumeration_translates
    assert not report.passed


@pytest.mark.slow
def test_equality_case_analysis_full():
    """Test the analysis with a fresh exact enumeration."""
    assert equality_case_analysis().passed
