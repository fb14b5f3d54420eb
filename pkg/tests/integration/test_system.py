"""
Integration tests for the SumsetSquaresSystem facade.
"""

from fractions import Fraction

import numpy as np
import pytest
import yaml

from src.extremal_search import SearchMode
from src.integer_lab import ApproximantParams, GeneratorKind, SetGenerator, uniform_random_set
from src.integration.system import CONFIG_ENV_VAR, DEFAULT_SEED, SumsetSquaresSystem
from src.optimization_verifier import EnumerationMode, case_count


@pytest.fixture
def test_config():
    """Small-scale configuration fixture."""
    return {
        "modular_verifier": {
            "tolerance": 1e-9,
            "inequality_tolerance": 1e-8,
            "cases": 3,
            "gauss_q_max": 96,
        },
        "extremal_search": {"exhaustive_max_q": 16, "reduced_max_q": 24},
        "optimization_verifier": {"workers": 1, "max_extra": 2},
        "integer_lab": {"workers": 1, "approximant": {"beta_samples": 4}},
        "integration": {"seed": 11, "log_failures": False},
    }


@pytest.fixture
def system(test_config, tmp_path):
    """Sumset squares system fixture."""
    config_path = tmp_path / "test_config.yaml"
    with open(config_path, "w") as f:
        yaml.dump(test_config, f)

    return SumsetSquaresSystem(config_path=str(config_path))


def _lift(residues, modulus=8):
    return SetGenerator(GeneratorKind.RESIDUE_LIFT, {"residues": residues, "modulus": modulus})


def test_system_creation(system):
    """Test system can be created."""
    assert system is not None
    assert system.initialized is False
    assert system.seed == 11


def test_system_initialization(system):
    """Test system initialization."""
    system.initialize()

    assert system.initialized is True
    assert system.report_log is not None
    assert system.search_budget.exhaustive_max_q == 16
    assert system.orchestrator is not None


def test_system_status_before_init(system):
    """Test getting status before initialization."""
    status = system.get_system_status()

    assert status["status"] == "not_initialized"


def test_system_status(system):
    """Test getting system status."""
    system.initialize()

    status = system.get_system_status()

    assert status["version"] == "1.0.0"
    assert status["seed"] == 11
    assert status["search_budget"]["reduced_max_q"] == 24
    assert status["reports"]["total"] == 0


def test_get_version(system):
    """Test getting system version."""
    assert system.get_version() == "1.0.0"


def test_system_repr(system):
    """Test system string representation."""
    assert "SumsetSquaresSystem" in repr(system)
    assert "created" in repr(system)

    system.initialize()
    assert "initialized" in repr(system)


def test_system_with_default_config():
    """Test system with default configuration."""
    system = SumsetSquaresSystem(config_path="nonexistent.yaml")

    assert system.config is not None
    assert system.seed == DEFAULT_SEED
    assert "ring_core" in system.config
    assert 24 in system.config["extremal_search"]["suite_moduli"]
    assert system.config["ring_core"]["crt_pairs"] > 0


def test_config_path_from_environment(test_config, tmp_path, monkeypatch):
    """Test the config path is read from the environment."""
    config_path = tmp_path / "env_config.yaml"
    with open(config_path, "w") as f:
        yaml.dump(test_config, f)
    monkeypatch.setenv(CONFIG_ENV_VAR, str(config_path))

    system = SumsetSquaresSystem()

    assert system.seed == 11


def test_malformed_config_falls_back_to_defaults(tmp_path):
    """Test a config file that is not a mapping is ignored."""
    config_path = tmp_path / "bad.yaml"
    config_path.write_text("- just\n- a list\n")

    system = SumsetSquaresSystem(config_path=str(config_path))

    assert system.seed == DEFAULT_SEED


def test_qr_table(system):
    """Test the square profile through the facade."""
    profile = system.qr_table(24)

    assert profile.total() == 24
    assert profile[0] == 2
    assert profile[1] == 8


def test_verify_modular_multiple_of_24(system):
    """Test every identity and inequality is checked when 24 | q."""
    reports = system.verify_modular(48)

    assert len(reports) == 3 * 6
    assert all(r.passed for r in reports)
    assert {r.data["case"] for r in reports} == {0, 1, 2}
    assert all(r.seed == 11 for r in reports)


def test_verify_modular_other_modulus(system):
    """Test only the Fourier and lift identities run when 24 does not divide q."""
    reports = system.verify_modular(10, cases=4, seed=3)

    assert len(reports) == 8
    assert all(r.passed for r in reports)
    assert system.report_log.get_summary()["total"] == 8


def test_verify_modular_is_reproducible(system):
    """Test the same seed yields the same residuals."""
    first = [r.lhs for r in system.verify_modular(24, cases=2, seed=5)]
    second = [r.lhs for r in system.verify_modular(24, cases=2, seed=5)]

    assert first == second


def test_verify_modular_zero_tolerance_fails(system):
    """Test a zero tolerance exposes float residuals."""
    reports = system.verify_modular(24, cases=3, seed=1, tolerance=0.0)

    assert not all(r.passed for r in reports)


def test_gauss_bounds(system):
    """Test the Gauss bound sweep covers 48, 72 and 96."""
    reports = system.gauss_bounds()

    assert [r.q for r in reports] == [48, 72, 96]
    assert all(r.passed for r in reports)


def test_gauss_table_rows(system):
    """Test the Gauss table rows are flat and within bound."""
    rows = system.gauss_table(48)

    assert rows
    assert {row["q"] for row in rows} == {48}
    assert all(row["within_bound"] for row in rows)


def test_gauss_value_check(system):
    """Test |f_48^(-1)| equals sqrt(2/48)."""
    report = system.gauss_value_check(48, 1)

    assert report.passed


def test_search(system):
    """Test the extremal search through the facade."""
    witness = system.search(8, SearchMode.AUTO)

    assert witness.objective == 3
    assert witness.certified


def test_optimize_partial_scan(system):
    """Test the configured max_extra limits the enumeration."""
    result = system.optimize(EnumerationMode.EXACT)

    assert result.case_count == case_count(2)
    assert result.bound_holds


def test_count_extremal_lifts(system):
    """Test the mod-8 extremal lifts have no square pairs."""
    assert system.count(500, _lift([0, 1, 5]), _lift([2, 5, 6])) == 0


def test_approximant_reports_pass(system):
    """Test the balanced function checks on a random set."""
    A = uniform_random_set(1200, 0.5, np.random.default_rng(2))

    reports = system.approximant(A, ApproximantParams(Q=12, K=10))

    assert reports[0].lemma == "approximant_mass"
    assert all(r.passed for r in reports)
    # mass, beta = 0 at every a/q with q | 12, then the sampled offsets
    assert len(reports) == 1 + 12 + 4


def test_experiment_waived_lifts_fail(system):
    """Test the bare extremal lifts fall below the bound."""
    report = system.experiment(
        2000, Fraction(1, 16), _lift([0, 1, 5]), _lift([2, 5, 6]), waive_density=True
    )

    assert report.count == 0
    assert not report.passed


def test_sweep(system):
    """Test the density sweep returns one report per epsilon."""
    reports = system.sweep(2000, [Fraction(1, 16), Fraction(1, 8)], seed=4)

    assert [r.epsilon for r in reports] == [Fraction(1, 16), Fraction(1, 8)]
    assert all(r.passed for r in reports)


def test_audit_identity(system):
    """Test the four-term decomposition sums to the count."""
    density = Fraction(7, 16)
    gen_a, gen_b = (
        SetGenerator(
            GeneratorKind.BOOSTED_LIFT,
            {"residues": residues, "modulus": 8, "density": density},
            seed=seed,
        )
        for residues, seed in (([0, 1, 5], 1), ([2, 5, 6], 2))
    )

    report = system.audit(2000, gen_a, gen_b, ApproximantParams.from_qbar(3, 10), Fraction(1, 16))

    assert report.identity_holds
    assert report.passed
