"""
Unit tests for verification reports and the report log.
"""

from fractions import Fraction

import pytest

from src.modular_verifier.reports import (
    CheckKind,
    ReportLog,
    VerificationReport,
    render_number,
)


def test_identity_report_within_tolerance():
    """Test an identity passes when the residual is below tolerance."""
    report = VerificationReport("demo", CheckKind.IDENTITY, 1.0, 1.0 + 1e-12)
    assert report.passed
    assert not report.exact


def test_identity_report_zero_tolerance_float():
    """Test a float identity with rounding fails at zero tolerance."""
    report = VerificationReport("demo", CheckKind.IDENTITY, 0.1 + 0.2, 0.3, tolerance=0.0)
    assert not report.passed


def test_exact_identity_zero_tolerance():
    """Test exact sides compare exactly."""
    report = VerificationReport(
        "demo", CheckKind.IDENTITY, Fraction(1, 3), Fraction(2, 6), tolerance=0.0
    )
    assert report.exact
    assert report.passed
    assert report.residual == 0


def test_lower_and_upper_bounds():
    """Test inequality kinds."""
    assert VerificationReport("lb", CheckKind.LOWER_BOUND, 2, 1).passed
    assert not VerificationReport("lb", CheckKind.LOWER_BOUND, 1, 2).passed
    assert VerificationReport("ub", CheckKind.UPPER_BOUND, 1, 2).passed
    assert not VerificationReport("ub", CheckKind.UPPER_BOUND, 2, 1).passed


def test_side_conditions_gate_pass():
    """Test a failing side condition fails the report."""
    report = VerificationReport(
        "demo", CheckKind.IDENTITY, 0.0, 0.0, side_conditions={"imag": False}
    )
    assert not report.passed


def test_render_number_provenance():
    """Test numbers are tagged exact or float."""
    assert render_number(Fraction(3, 4)) == {
        "provenance": "exact",
        "value": "3/4",
        "decimal": 0.75,
    }
    assert render_number(0.5) == {"provenance": "float", "value": 0.5}
    assert render_number(None) is None


def test_report_to_dict_keys():
    """Test the JSON rendering carries the documented keys."""
    report = VerificationReport(
        "demo", CheckKind.LOWER_BOUND, 3, 1, q=8, seed=7, data={"count": 4}
    )
    out = report.to_dict()
    for key in ("lemma", "q", "lhs", "rhs", "residual", "pass", "seed"):
        assert key in out
    assert out["pass"] is True
    assert out["data"] == {"count": 4}


@pytest.fixture
def report_log():
    """Report log fixture."""
    return ReportLog({"log_failures": False})


def test_report_log_empty_summary(report_log):
    """Test the summary of an empty log."""
    assert report_log.get_summary()["status"] == "empty"


def test_report_log_collects_failures(report_log):
    """Test failures are listed and summarized per lemma."""
    report_log.record(VerificationReport("a", CheckKind.IDENTITY, 1, 1))
    report_log.record(VerificationReport("b", CheckKind.IDENTITY, 1, 2))
    report_log.record(VerificationReport("b", CheckKind.IDENTITY, 2, 2))

    assert len(report_log.get_failures()) == 1
    summary = report_log.get_summary()
    assert summary["status"] == "fail"
    assert summary["by_lemma"]["b"] == {"total": 2, "failed": 1}
    assert not report_log.all_passed

    report_log.clear()
    assert report_log.reports == []
