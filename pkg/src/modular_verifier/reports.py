"""
Verification reports for identities and inequalities.

A report holds both sides of a check and derives its residual and verdict.
When both sides are exact (rationals or Quad5 values) the verdict is decided
in exact arithmetic; otherwise in double precision against the tolerance.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)

DEFAULT_IDENTITY_TOLERANCE = 1e-9
DEFAULT_INEQUALITY_TOLERANCE = 1e-8


class CheckKind(Enum):
    """Shape of the checked statement"""
    IDENTITY = "identity"        # |lhs - rhs| <= tol
    LOWER_BOUND = "lower_bound"  # lhs >= rhs - tol
    UPPER_BOUND = "upper_bound"  # lhs <= rhs + tol


def is_exact_number(x) -> bool:
    if isinstance(x, bool):
        return False
    return isinstance(x, Rational) or hasattr(x, "to_json")


def render_number(x) -> Any:
    """
    JSON rendering of a number tagged with its provenance.

    Quad5 values render themselves; rationals keep numerator/denominator
    next to a decimal.
    """
    if x is None:
        return None
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, Rational) and not isinstance(x, bool):
        frac = Fraction(x)
        return {
            "provenance": "exact",
            "value": str(frac),
            "decimal": float(frac),
        }
    if isinstance(x, complex):
        return {"provenance": "float", "real": x.real, "imag": x.imag}
    return {"provenance": "float", "value": float(x)}


@dataclass
class VerificationReport:
    """
    Outcome of a single identity or inequality check.

    ``side_conditions`` are extra boolean requirements (for example a
    vanishing imaginary part) that must all hold for the report to pass.
    """
    lemma: str
    kind: CheckKind
    lhs: Any
    rhs: Any
    tolerance: float = DEFAULT_IDENTITY_TOLERANCE
    q: Optional[int] = None
    epsilon: Optional[float] = None
    c_epsilon: Optional[float] = None
    seed: Optional[int] = None
    side_conditions: Dict[str, bool] = field(default_factory=dict)
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return is_exact_number(self.lhs) and is_exact_number(self.rhs)

    @property
    def residual(self):
        if self.exact:
            return self.lhs - self.rhs
        return float(self.lhs) - float(self.rhs)

    def _main_check(self) -> bool:
        res = self.residual
        tol = Fraction(self.tolerance) if self.exact else self.tolerance
        if self.kind is CheckKind.IDENTITY:
            return -tol <= res <= tol
        if self.kind is CheckKind.LOWER_BOUND:
            return res >= -tol
        return res <= tol

    @property
    def passed(self) -> bool:
        return bool(self._main_check()) and all(self.side_conditions.values())

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready rendering with provenance-tagged numbers."""
        out = {
            "lemma": self.lemma,
            "kind": self.kind.value,
            "q": self.q,
            "lhs": render_number(self.lhs),
            "rhs": render_number(self.rhs),
            "residual": render_number(self.residual),
            "tolerance": self.tolerance,
            "pass": self.passed,
            "seed": self.seed,
        }
        if self.epsilon is not None:
            out["epsilon"] = render_number(self.epsilon)
            out["c_epsilon"] = render_number(self.c_epsilon)
        if self.side_conditions:
            out["side_conditions"] = dict(self.side_conditions)
        if self.data:
            out["data"] = {k: _render_value(v) for k, v in self.data.items()}
        return out


def _render_value(v):
    if isinstance(v, dict):
        return {str(k): _render_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_render_value(x) for x in v]
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, int):
        return v
    if hasattr(v, "tolist"):
        return _render_value(v.tolist())
    return render_number(v)


class ReportLog:
    """
    Collects verification reports across a run.

    Responsible for:
    - Recording reports as checks complete
    - Listing failures
    - Summarizing the overall verdict
    """

    def __init__(self, config: Optional[Dict] = None):
        """
        Initialize the report log.

        Args:
            config: Optional settings; ``log_failures`` (default True) logs a
                warning for every failing report as it is recorded
        """
        config = config or {}
        self.log_failures = config.get("log_failures", True)
        self.reports: List[VerificationReport] = []

        logger.debug("Report log initialized")

    def record(self, report: VerificationReport) -> VerificationReport:
        self.reports.append(report)
        if not report.passed and self.log_failures:
            logger.warning(
                f"Check failed: {report.lemma} (q={report.q}, "
                f"residual={float(report.residual):.3e})"
            )
        return report

    def extend(self, reports) -> None:
        for report in reports:
            self.record(report)

    def get_failures(self) -> List[VerificationReport]:
        return [r for r in self.reports if not r.passed]

    def clear(self):
        """Clear recorded reports."""
        self.reports.clear()
        logger.debug("Report log cleared")

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def get_summary(self) -> Dict:
        """
        Aggregate verdict over all recorded reports.

        Returns:
            Dictionary with status, totals and per-lemma failure counts
        """
        if not self.reports:
            return {"status": "empty", "total": 0, "failed": 0, "by_lemma": {}}

        by_lemma: Dict[str, Dict[str, int]] = {}
        for r in self.reports:
            entry = by_lemma.setdefault(r.lemma, {"total": 0, "failed": 0})
            entry["total"] += 1
            if not r.passed:
                entry["failed"] += 1

        failed = sum(e["failed"] for e in by_lemma.values())
        return {
            "status": "pass" if failed == 0 else "fail",
            "total": len(self.reports),
            "failed": failed,
            "by_lemma": by_lemma,
        }
