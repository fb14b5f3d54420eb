"""
Unit tests for residue weights.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.ring_core.errors import PreconditionError
from src.ring_core.weights import ResidueWeight, WeightRole, random_weight


def test_indicator_is_exact():
    """Test indicators are held as Fractions."""
    w = ResidueWeight.indicator(8, [0, 1, 5])
    assert w.is_exact
    assert w.total() == 3
    assert w.support() == [0, 1, 5]


def test_weight_range_enforced():
    """Test weight-role values must lie in [0, 1]."""
    with pytest.raises(ValueError):
        ResidueWeight.from_values([0.5, 1.5])
    with pytest.raises(ValueError):
        ResidueWeight.from_values([-0.1, 0.5])


def test_signed_role_allows_negative():
    """Test signed values in [-1, 1] are accepted."""
    w = ResidueWeight.from_values([-1, 0, Fraction(1, 2)], role=WeightRole.SIGNED)
    assert w.role is WeightRole.SIGNED
    assert w[0] == -1


def test_values_are_immutable():
    """Test the value array is read-only."""
    w = ResidueWeight.constant(4, Fraction(1, 2))
    with pytest.raises(ValueError):
        w.values[0] = 0


def test_reflect_and_translate():
    """Test reflection x -> -x and translation x -> x - s."""
    w = ResidueWeight.indicator(8, [0, 1, 5])
    assert w.reflect().support() == [0, 3, 7]
    assert w.translate(2).support() == [2, 3, 7]
    assert w.reflect().reflect().support() == w.support()


def test_mean_exact():
    """Test the mean of an exact weight stays rational."""
    w = ResidueWeight.indicator(24, range(9))
    assert w.mean() == Fraction(3, 8)


def test_random_weight_reaches_target_mean():
    """Test the affine rescale lifts the mean to the target."""
    rng = np.random.default_rng(7)
    for _ in range(50):
        w = random_weight(36, rng, target_mean=0.475)
        assert w.mean() >= 0.475
        assert np.all(w.as_array() >= 0.0)
        assert np.all(w.as_array() <= 1.0)


def test_random_weight_is_reproducible():
    """Test the same seed yields the same weight."""
    a = random_weight(20, np.random.default_rng(3), target_mean=0.6)
    b = random_weight(20, np.random.default_rng(3), target_mean=0.6)
    assert np.array_equal(a.as_array(), b.as_array())


def test_random_weight_rejects_bad_target():
    """Test an out-of-range target mean is rejected."""
    with pytest.raises(PreconditionError):
        random_weight(8, np.random.default_rng(0), target_mean=1.5)
