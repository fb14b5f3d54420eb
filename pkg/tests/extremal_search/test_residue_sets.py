"""
Unit tests for residue sets and square avoidance.
"""

import numpy as np
import pytest

from src.ring_core.errors import ModulusMismatchError
from src.extremal_search.residue_sets import (
    ResidueSet,
    avoids_squares,
    avoids_squares_naive,
    extremal_partner,
    lex_less,
    qr_set,
)


def _set(q, residues):
    return ResidueSet.from_residues(q, residues)


def _random_set(rng, q):
    bits = np.nonzero(rng.random(q) < 0.5)[0]
    return ResidueSet.from_residues(q, (int(b) for b in bits))


@pytest.mark.parametrize(
    "q, expected",
    [
        (3, [0, 1]),
        (8, [0, 1, 4]),
        (32, [0, 1, 4, 9, 16, 17, 25]),
    ],
)
def test_qr_set(q, expected):
    """Test the squares mod q."""
    assert qr_set(q).elements() == expected


def test_residue_set_basics():
    """Test membership, size and canonicalization."""
    A = _set(8, [0, 9, 5])
    assert A.elements() == [0, 1, 5]
    assert len(A) == 3
    assert 13 in A
    assert 2 not in A


def test_residue_set_mask_range():
    """Test a mask wider than q bits is rejected."""
    with pytest.raises(ValueError):
        ResidueSet(3, 0b1000)


def test_translate_and_negate():
    """Test rotation of the bitmask."""
    A = _set(8, [0, 1, 5])
    assert A.translate(3).elements() == [0, 3, 4]
    assert A.translate(-1).elements() == [0, 4, 7]
    assert A.negate().elements() == [0, 3, 7]


def test_avoids_squares_examples():
    """Test the classical pairs and a single offending pair."""
    assert avoids_squares(_set(8, [0, 1, 5]), _set(8, [2, 5, 6]))
    assert avoids_squares(_set(3, [1]), _set(3, [1]))
    assert not avoids_squares(_set(8, [0, 1, 5]), _set(8, [2, 5, 6, 7]))


def test_avoids_squares_mismatch():
    """Test sets on different moduli are rejected."""
    with pytest.raises(ModulusMismatchError):
        avoids_squares(_set(8, [1]), _set(9, [1]))


def test_avoids_squares_matches_double_loop():
    """Test the mask test against the double loop on random instances."""
    rng = np.random.default_rng(99)
    for _ in range(1000):
        q = int(rng.integers(1, 65))
        A = _random_set(rng, q)
        B = _random_set(rng, q)
        assert avoids_squares(A, B) == avoids_squares_naive(A, B)


@pytest.mark.parametrize(
    "A, expected",
    [
        ([0, 1, 5], [2, 5, 6]),
        ([0, 1, 4], [2, 6]),
        ([], [0, 1, 2, 3, 4, 5, 6, 7]),
    ],
)
def test_extremal_partner_examples(A, expected):
    """Test the maximal partner mod 8."""
    assert extremal_partner(_set(8, A)).elements() == expected


def test_extremal_partner_is_maximal():
    """Test the partner avoids squares and no residue can be added."""
    rng = np.random.default_rng(4)
    for _ in range(200):
        q = int(rng.integers(2, 30))
        A = _random_set(rng, q)
        B = extremal_partner(A)
        assert avoids_squares(A, B)
        for t in range(q):
            if t not in B:
                assert not avoids_squares(A, ResidueSet(q, B.mask | 1 << t))


def test_extremal_partner_translation_covariance():
    """Test partner(A + x) = partner(A) - x."""
    rng = np.random.default_rng(8)
    for _ in range(100):
        q = int(rng.integers(2, 40))
        A = _random_set(rng, q)
        base = extremal_partner(A)
        for x in range(q):
            assert extremal_partner(A.translate(x)) == base.translate(-x)


def test_extremal_partner_monotone():
    """Test A subset of A' implies partner(A') subset of partner(A)."""
    rng = np.random.default_rng(12)
    for _ in range(200):
        q = int(rng.integers(2, 40))
        A = _random_set(rng, q)
        bigger = ResidueSet(q, A.mask | _random_set(rng, q).mask)
        assert extremal_partner(bigger).issubset(extremal_partner(A))


def test_lex_less():
    """Test lexicographic order on sorted element lists."""
    assert lex_less(_set(8, [0, 1, 5]).mask, _set(8, [0, 3, 4]).mask)
    assert not lex_less(_set(8, [0, 4, 7]).mask, _set(8, [0, 3, 4]).mask)
    assert not lex_less(5, 5)
