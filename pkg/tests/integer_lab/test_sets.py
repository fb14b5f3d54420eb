"""
Unit tests for integer sets and generators.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.ring_core.errors import PreconditionError
from src.integer_lab.sets import (
    GeneratorKind,
    IntegerSet,
    SetGenerator,
    boosted_lift,
    uniform_random_set,
)


def test_from_elements():
    """Test membership, size and density."""
    A = IntegerSet.from_elements(10, [1, 4, 4, 10])
    assert len(A) == 3
    assert 4 in A and 2 not in A and 11 not in A
    assert A.elements().tolist() == [1, 4, 10]
    assert A.density() == Fraction(3, 10)
    assert A.indicator().tolist() == [1, 0, 0, 1, 0, 0, 0, 0, 0, 1]


def test_from_elements_out_of_range():
    """Test elements outside [1, N] are rejected."""
    with pytest.raises(PreconditionError):
        IntegerSet.from_elements(5, [0, 3])
    with pytest.raises(PreconditionError):
        IntegerSet.from_elements(5, [6])


def test_membership_is_read_only():
    """Test the membership array cannot be mutated."""
    A = IntegerSet.full(4)
    with pytest.raises(ValueError):
        A.membership[0] = False


def test_residue_lift():
    """Test the lift of {0,1,5} mod 8."""
    A = IntegerSet.residue_lift(16, [0, 1, 5], 8)
    assert A.elements().tolist() == [1, 5, 8, 9, 13, 16]
    assert IntegerSet.residue_lift(100000, [0, 1, 5], 8).density() == Fraction(3, 8)


def test_from_file(tmp_path):
    """Test newline-delimited input with comments."""
    path = tmp_path / "A.txt"
    path.write_text("# elements\n3\n\n7  # trailing\n1\n")
    A = IntegerSet.from_file(path)
    assert A.N == 7
    assert A.elements().tolist() == [1, 3, 7]
    assert IntegerSet.from_file(path, N=20).N == 20


def test_from_file_rejects_garbage(tmp_path):
    """Test a non-integer line is reported."""
    path = tmp_path / "bad.txt"
    path.write_text("1\nx\n")
    with pytest.raises(PreconditionError) as exc:
        IntegerSet.from_file(path)
    assert exc.value.measured["line"] == 2


def test_uniform_random_set_size_and_seed():
    """Test exact size and reproducibility."""
    A = uniform_random_set(1000, 0.5, np.random.default_rng(5))
    B = uniform_random_set(1000, 0.5, np.random.default_rng(5))
    assert len(A) == 500
    assert np.array_equal(A.membership, B.membership)


def test_boosted_lift_contains_base():
    """Test extras are added on top of the lift."""
    base = IntegerSet.residue_lift(1000, [0, 1, 5], 8)
    boosted = boosted_lift(1000, [0, 1, 5], 8, Fraction(7, 16), np.random.default_rng(1))
    assert len(boosted) == 438
    assert np.all(boosted.membership[base.membership])


def test_boosted_lift_already_dense():
    """Test a dense enough lift is returned unchanged."""
    boosted = boosted_lift(800, [0, 1, 5], 8, Fraction(1, 4), np.random.default_rng(1))
    assert len(boosted) == 300


@pytest.mark.parametrize(
    "generator, size",
    [
        (SetGenerator(GeneratorKind.FULL), 80),
        (SetGenerator(GeneratorKind.RESIDUE_LIFT, {"residues": [2, 5, 6], "modulus": 8}), 30),
        (SetGenerator(GeneratorKind.UNIFORM, {"density": 0.5}, seed=3), 40),
        (
            SetGenerator(
                GeneratorKind.BOOSTED_LIFT,
                {"residues": [0, 1, 5], "modulus": 8, "density": Fraction(1, 2)},
                seed=3,
            ),
            40,
        ),
    ],
)
def test_generators(generator, size):
    """Test each generator kind."""
    assert len(generator.generate(80)) == size


def test_generator_to_dict():
    """Test the recipe rendering."""
    gen = SetGenerator(GeneratorKind.BOOSTED_LIFT, {"density": Fraction(7, 16)}, seed=9)
    assert gen.to_dict() == {"kind": "boosted_lift", "params": {"density": "7/16"}, "seed": 9}
