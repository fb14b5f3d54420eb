"""
Unit tests for the integer experiment and the decomposition audit.
"""

from fractions import Fraction
import math

import numpy as np
import pytest

from src.ring_core.errors import PreconditionError
from src.integer_lab.approximant import ApproximantParams
from src.integer_lab.experiment import (
    decomposition_audit,
    density_sweep,
    experiment_bound,
    main_experiment,
)
from src.integer_lab.sets import GeneratorKind, IntegerSet, SetGenerator, uniform_random_set


def _lift(residues):
    return SetGenerator(GeneratorKind.RESIDUE_LIFT, {"residues": residues, "modulus": 8})


def _boosted(residues, seed, eps=Fraction(1, 16)):
    return SetGenerator(
        GeneratorKind.BOOSTED_LIFT,
        {"residues": residues, "modulus": 8, "density": Fraction(3, 8) + eps},
        seed=seed,
    )


def test_experiment_bound():
    """Test 1e-6 eps^3 N^{3/2}."""
    assert experiment_bound(10 ** 5, Fraction(1, 16)) == pytest.approx(7.72, abs=0.01)
    assert experiment_bound(10 ** 5, 0) == 0


def test_extremal_lifts_have_no_square_pairs():
    """Test the mod-8 construction at N = 10^5."""
    report = main_experiment(10 ** 5, 0, _lift([0, 1, 5]), _lift([2, 5, 6]), waive_density=True)
    assert report.count == 0
    assert report.bound == 0
    assert report.passed
    assert report.density_waived
    assert report.to_dict()["margin"] is None


def test_boosted_lifts_beat_bound():
    """Test eps = 1/16 boosted lifts clear the bound by a wide margin."""
    report = main_experiment(
        10 ** 5, Fraction(1, 16), _boosted([0, 1, 5], 1), _boosted([2, 5, 6], 2)
    )
    assert report.passed
    assert report.margin >= 100
    assert report.densities["A"] >= 7 / 16
    assert report.seeds == {"A": 1, "B": 2}


def test_full_range():
    """Test A = B = [1, N] against a closed-form square tally."""
    N = 10 ** 4
    full = SetGenerator(GeneratorKind.FULL)
    report = main_experiment(N, Fraction(5, 8), full, full)
    expected = sum(
        min(m * m - 1, 2 * N - m * m + 1) for m in range(2, math.isqrt(2 * N) + 1)
    )
    assert report.count == expected
    assert report.passed


def test_density_shortfall():
    """Test sparse sets are rejected with measured densities."""
    sparse = SetGenerator(GeneratorKind.UNIFORM, {"density": 0.3}, seed=0)
    with pytest.raises(PreconditionError) as exc:
        main_experiment(1000, Fraction(1, 16), sparse, sparse)
    assert exc.value.measured["density_A"] == pytest.approx(0.3)


def test_density_sweep():
    """Test the sweep reports one passing experiment per epsilon."""
    reports = density_sweep(20000, [Fraction(1, 16), Fraction(1, 8)], seed=3)
    assert [r.epsilon for r in reports] == [Fraction(1, 16), Fraction(1, 8)]
    assert all(r.passed for r in reports)


def test_audit_extremal_lifts():
    """Test every term vanishes for the extremal construction."""
    A = IntegerSet.residue_lift(4800, [0, 1, 5], 8)
    B = IntegerSet.residue_lift(4800, [2, 5, 6], 8)
    report = decomposition_audit(A, B, ApproximantParams(Q=24, K=10))
    assert report.count == 0
    assert report.terms == {"main": 0.0, "f_w": 0.0, "w_f": 0.0, "f_f": 0.0}
    assert report.passed
    assert report.error_bound is None


def test_audit_random_dense_sets():
    """Test the four terms sum to the exact count."""
    rng = np.random.default_rng(4800)
    A = uniform_random_set(4800, 0.5, rng)
    B = uniform_random_set(4800, 0.5, rng)
    report = decomposition_audit(A, B, ApproximantParams.from_qbar(4, 10))
    assert report.identity_holds
    assert report.relative_error < 1e-6
    assert report.epsilon == Fraction(1, 8)
    out = report.to_dict()
    assert set(out["bounds_met"]) == {
        "main_term", "error_terms", "fourier_decay", "dense_blocks", "final"
    }
    assert out["bounds_met"]["fourier_decay"] is True
    assert out["main_bound"] > 0
    assert out["caveat"]


def test_audit_rejects_mismatched_ranges():
    """Test both sets must share N."""
    with pytest.raises(PreconditionError):
        decomposition_audit(
            IntegerSet.full(4800), IntegerSet.full(4000), ApproximantParams(Q=12, K=10)
        )


@pytest.mark.slow
def test_audit_at_full_scale():
    """Test the audit identity on boosted lifts at N = 10^5."""
    A = _boosted([0, 1, 5], 11).generate(10 ** 5)
    B = _boosted([2, 5, 6], 12).generate(10 ** 5)
    report = decomposition_audit(A, B, ApproximantParams.from_qbar(4, 10), Fraction(1, 16))
    assert report.relative_error < 1e-6
    assert report.passed
