"""
Inequality checks on Z/24Z behind the 48-variable optimization.

Left-hand sides are the weighted square count
    sum_t (a*b)(t) f_24(t),  (a*b)(t) = (1/24) sum_j a(j) b(t - j).
Everything is exact for rational inputs except square roots of
non-square rationals, which fall back to floating point.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from src.ring_core.errors import PreconditionError
from src.ring_core.residues import qr_profile
from src.extremal_search.residue_sets import ResidueSet, avoids_squares, extremal_partner
from src.modular_verifier.reports import (
    DEFAULT_IDENTITY_TOLERANCE,
    CheckKind,
    VerificationReport,
)
from src.optimization_verifier.enumeration import EnumerationResult, enumerate_norm_bound
from src.optimization_verifier.phi import (
    NORM_WEIGHT,
    SIZE,
    NonnegVector24,
    PhiVector,
    convolve_with,
    h_functional,
    norm_N,
    positive_part,
)
from src.optimization_verifier.quad5 import SQRT5_FLOAT, Quad5, exact_sqrt

logger = logging.getLogger(__name__)

MASS_THRESHOLD = 9  # (3/8) * 24


def _square_table() -> np.ndarray:
    profile = qr_profile(SIZE)
    idx = (np.arange(SIZE)[:, None] + np.arange(SIZE)[None, :]) % SIZE
    return np.asarray(profile.counts, dtype=np.int64)[idx]


def square_count_24(a: NonnegVector24, b: NonnegVector24):
    """sum_t (a*b)(t) f_24(t); a Fraction for exact inputs."""
    table = _square_table()
    if a.is_exact and b.is_exact:
        total = Fraction(0)
        for j, aj in enumerate(a.values):
            if aj:
                for k, bk in enumerate(b.values):
                    if bk and table[j, k]:
                        total += aj * bk * int(table[j, k])
        return total / SIZE
    return float(a.as_array() @ table @ b.as_array()) / SIZE


def spread(a: NonnegVector24):
    """sum a - sum a^2"""
    return a.total() - a.sum_squares()


def _root_term(x, y):
    """(1/sqrt 5) sqrt(x) sqrt(y), exact when the result lies in Q(sqrt 5)."""
    if isinstance(x, Fraction) and isinstance(y, Fraction) and x >= 0 and y >= 0:
        product = x * y
        root = exact_sqrt(product)
        if root is not None:
            return Quad5(0, root / 5)
        root = exact_sqrt(product / 5)
        if root is not None:
            return Quad5(root, 0)
    return math.sqrt(max(float(x), 0.0)) * math.sqrt(max(float(y), 0.0)) / SQRT5_FLOAT


def _inv_sqrt5(x):
    """x / sqrt(5)"""
    if isinstance(x, Fraction):
        return Quad5(0, x / 5)
    return float(x) / SQRT5_FLOAT


def _add(x, y):
    if isinstance(x, float) or isinstance(y, float):
        return float(x) + float(y)
    return Quad5.coerce(x) + Quad5.coerce(y)


def _is_equal(lhs, rhs) -> bool:
    if isinstance(lhs, float) or isinstance(rhs, float):
        return abs(float(lhs) - float(rhs)) <= DEFAULT_IDENTITY_TOLERANCE
    return lhs == rhs


def linf_bound_check(
    a: NonnegVector24,
    phi: Optional[PhiVector] = None,
    tolerance: float = 0.0,
) -> VerificationReport:
    """
    max_t ((a*phi)(t))_+ <= (1/24)(16/3)(9) = 2 for |a|_inf <= 1, |a|_1 <= 9.

    Raises:
        PreconditionError: a violates either norm condition
    """
    linf, l1 = a.linf(), a.total()
    if linf > 1 or l1 > MASS_THRESHOLD:
        measured = {"linf": float(linf), "l1": float(l1)}
        logger.error(f"linf_bound_check precondition violated: {measured}")
        raise PreconditionError("need |a|_inf <= 1 and |a|_1 <= 9", measured)
    phi = phi or PhiVector.standard()
    parts = positive_part(convolve_with(a, phi))
    return VerificationReport(
        lemma="positive_part_linf",
        kind=CheckKind.UPPER_BOUND,
        lhs=max(parts),
        rhs=Fraction(2),
        tolerance=tolerance,
        q=SIZE,
    )


def norm_bound_check(
    a: NonnegVector24,
    psi: Optional[PhiVector] = None,
    tolerance: float = 0.0,
) -> VerificationReport:
    """N((a*psi)_+) <= 2 N(a) for a single vector."""
    psi = psi or PhiVector.standard()
    parts = positive_part(convolve_with(a, psi))
    if a.is_exact:
        lhs = max(NORM_WEIGHT * max(parts), sum(parts, Quad5(0)))
    else:
        lhs = max(NORM_WEIGHT * max(parts), float(sum(parts)))
    return VerificationReport(
        lemma="norm_bound",
        kind=CheckKind.UPPER_BOUND,
        lhs=lhs,
        rhs=2 * norm_N(a),
        tolerance=tolerance,
        q=SIZE,
    )


def prop53_check(
    a: NonnegVector24,
    b: NonnegVector24,
    tolerance: float = DEFAULT_IDENTITY_TOLERANCE,
) -> VerificationReport:
    """
    sum_t (a*b)(t) f_24(t) >= (1/(2 sqrt 5)) ((2/9)(sum a)(sum b) - sum a^2 - sum b^2)

    for non-negative a, b. ``data["equality"]`` records whether both sides
    agree (exactly, for rational input).
    """
    lhs = square_count_24(a, b)
    inner = Fraction(2, 9) * a.total() * b.total() - a.sum_squares() - b.sum_squares()
    if isinstance(inner, Fraction):
        rhs = Quad5(0, inner / 10)  # 1/(2 sqrt 5) = sqrt(5)/10
    else:
        rhs = float(inner) / (2 * SQRT5_FLOAT)
    return VerificationReport(
        lemma="quadratic_form_bound",
        kind=CheckKind.LOWER_BOUND,
        lhs=lhs,
        rhs=rhs,
        tolerance=tolerance,
        q=SIZE,
        data={"equality": _is_equal(lhs, rhs)},
    )


def prop53_batch(
    A: np.ndarray,
    B: np.ndarray,
    tolerance: float = DEFAULT_IDENTITY_TOLERANCE,
    seed: Optional[int] = None,
) -> VerificationReport:
    """
    Vectorized float check of the quadratic-form bound over row pairs.

    The report's lhs is the smallest margin lhs_i - rhs_i over all rows.

    Raises:
        PreconditionError: shapes differ or an entry is negative
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.shape != B.shape or A.ndim != 2 or A.shape[1] != SIZE:
        raise PreconditionError("need two (n, 24) arrays", {"A": A.shape, "B": B.shape})
    if A.size and min(A.min(), B.min()) < 0:
        raise PreconditionError(
            "entries must be non-negative", {"min": float(min(A.min(), B.min()))}
        )

    table = _square_table().astype(np.float64)
    lhs = np.einsum("ni,ij,nj->n", A, table, B) / SIZE
    sa, sb = A.sum(axis=1), B.sum(axis=1)
    inner = (2.0 / 9.0) * sa * sb - (A * A).sum(axis=1) - (B * B).sum(axis=1)
    rhs = inner / (2 * SQRT5_FLOAT)
    margin = lhs - rhs
    failures = int(np.count_nonzero(margin < -tolerance))
    return VerificationReport(
        lemma="quadratic_form_bound_batch",
        kind=CheckKind.LOWER_BOUND,
        lhs=float(margin.min()) if margin.size else 0.0,
        rhs=0.0,
        tolerance=tolerance,
        q=SIZE,
        seed=seed,
        data={"cases": int(margin.size), "failures": failures},
    )


def _check_unit_box(a: NonnegVector24, label: str):
    if a.linf() > 1:
        raise PreconditionError(
            "entries must lie in [0, 1]", {f"max_{label}": float(a.linf())}
        )


def prop36_check(
    a: NonnegVector24,
    b: NonnegVector24,
    epsilon,
    tolerance: float = DEFAULT_IDENTITY_TOLERANCE,
) -> VerificationReport:
    """
    sum_t (a*b)(t) f_24(t) >= eps/sqrt 5 + (1/sqrt 5) sqrt(sum a - sum a^2) sqrt(sum b - sum b^2)

    for a, b in [0,1]^24 with sums at least 9 + eps.

    Raises:
        PreconditionError: an entry exceeds 1, eps < 0, or a sum is too small
    """
    _check_unit_box(a, "a")
    _check_unit_box(b, "b")
    if epsilon < 0:
        raise PreconditionError("epsilon must be non-negative", {"epsilon": epsilon})
    required = MASS_THRESHOLD + epsilon
    if a.total() < required or b.total() < required:
        measured = {
            "sum_a": float(a.total()),
            "sum_b": float(b.total()),
            "required": float(required),
        }
        logger.error(f"Mass precondition violated: {measured}")
        raise PreconditionError("sums must be at least 9 + eps", measured)

    lhs = square_count_24(a, b)
    eps_term = _inv_sqrt5(Fraction(epsilon) if not isinstance(epsilon, float) else epsilon)
    rhs = _add(eps_term, _root_term(spread(a), spread(b)))
    return VerificationReport(
        lemma="optimization_bound" if epsilon else "optimization_bound_eps0",
        kind=CheckKind.LOWER_BOUND,
        lhs=lhs,
        rhs=rhs,
        tolerance=tolerance,
        q=SIZE,
        epsilon=float(epsilon),
        c_epsilon=float(epsilon) / SQRT5_FLOAT,
        data={"equality": _is_equal(lhs, rhs)},
    )


def prop52_check(
    a: NonnegVector24,
    b: NonnegVector24,
    tolerance: float = DEFAULT_IDENTITY_TOLERANCE,
) -> VerificationReport:
    """The eps = 0 case, with equality recorded in ``data["equality"]``."""
    return prop36_check(a, b, Fraction(0), tolerance)


def amgm_check(a: NonnegVector24, b: NonnegVector24) -> VerificationReport:
    """(1/sqrt 5) sqrt(X) sqrt(Y) <= (1/(2 sqrt 5)) (X + Y), X, Y the spreads."""
    x, y = spread(a), spread(b)
    return VerificationReport(
        lemma="am_gm_step",
        kind=CheckKind.LOWER_BOUND,
        lhs=_inv_sqrt5((x + y) / 2),
        rhs=_root_term(x, y),
        tolerance=DEFAULT_IDENTITY_TOLERANCE,
        q=SIZE,
    )


def footnote_check(x, y, epsilon) -> VerificationReport:
    """(2/9) x y >= x + y + 2 eps for x, y >= 9 + eps."""
    if x < MASS_THRESHOLD + epsilon or y < MASS_THRESHOLD + epsilon:
        raise PreconditionError(
            "need x, y >= 9 + eps", {"x": float(x), "y": float(y), "epsilon": float(epsilon)}
        )
    return VerificationReport(
        lemma="mass_algebra",
        kind=CheckKind.LOWER_BOUND,
        lhs=Fraction(2, 9) * x * y,
        rhs=x + y + 2 * epsilon,
        tolerance=DEFAULT_IDENTITY_TOLERANCE,
        epsilon=float(epsilon),
    )


def shift_invariance_check(a: NonnegVector24, psi: PhiVector, s: int) -> VerificationReport:
    """h(a shifted by s, psi) = h(a, psi)."""
    return VerificationReport(
        lemma="h_shift_invariance",
        kind=CheckKind.IDENTITY,
        lhs=h_functional(a.shift(s), psi),
        rhs=h_functional(a, psi),
        tolerance=DEFAULT_IDENTITY_TOLERANCE,
        q=SIZE,
        data={"shift": s},
    )


def convexity_check(a: NonnegVector24, other: NonnegVector24, psi: PhiVector) -> VerificationReport:
    """h at the midpoint is at most the mean of the endpoint values."""
    half = Fraction(1, 2) if a.is_exact and other.is_exact else 0.5
    mid = (a + other).scale(half)
    return VerificationReport(
        lemma="h_convexity",
        kind=CheckKind.UPPER_BOUND,
        lhs=h_functional(mid, psi),
        rhs=(h_functional(a, psi) + h_functional(other, psi)) * half,
        tolerance=DEFAULT_IDENTITY_TOLERANCE,
        q=SIZE,
    )


def homogeneity_check(a: NonnegVector24, gamma) -> VerificationReport:
    """N(gamma a) = gamma N(a) for gamma >= 0."""
    return VerificationReport(
        lemma="norm_homogeneity",
        kind=CheckKind.IDENTITY,
        lhs=norm_N(a.scale(gamma)),
        rhs=gamma * norm_N(a),
        tolerance=DEFAULT_IDENTITY_TOLERANCE,
        q=SIZE,
    )


# Extremal pair on Z/8Z and its lift to Z/24Z.
EXTREMAL_A = (0, 1, 5)
EXTREMAL_B = (2, 5, 6)


@dataclass
class EqualityCase:
    x: int
    support_a: List[int]
    support_b: List[int]
    lhs: Any
    rhs: Any
    equality: bool
    partner_unique: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x": self.x,
            "support_a": self.support_a,
            "support_b": self.support_b,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equality": self.equality,
            "partner_unique": self.partner_unique,
        }


@dataclass
class EqualityCaseReport:
    """Equality cases of the eps = 0 bound and how the enumeration finds them."""
    cases: List[EqualityCase] = field(default_factory=list)
    enumeration_translates: bool = False
    non_extremal_strict: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            all(c.equality and c.partner_unique for c in self.cases)
            and self.enumeration_translates
            and all(self.non_extremal_strict.values())
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cases": [c.to_dict() for c in self.cases],
            "enumeration_translates": self.enumeration_translates,
            "non_extremal_strict": dict(self.non_extremal_strict),
            "pass": self.passed,
        }


def _lift_residue_set(vector: NonnegVector24) -> ResidueSet:
    return ResidueSet.from_residues(SIZE, vector.support())


def _strict(a: NonnegVector24, b: NonnegVector24) -> bool:
    report = prop52_check(a, b)
    return report.passed and not report.data["equality"]


def equality_case_analysis(enumeration: Optional[EnumerationResult] = None) -> EqualityCaseReport:
    """
    Walk the eight translates (lift {0,1,5} + x, lift {2,5,6} - x).

    For each translate both sides of the eps = 0 bound must vanish, and the
    partner must be forced: the largest B avoiding squares with the lift of
    A is exactly the lift of B. The mirrored extremizers of the norm-bound
    enumeration, translated over Z/8Z, must reproduce all eight supports of
    A. Two non-extremal pairs with nine ones each must satisfy the bound
    strictly.

    Args:
        enumeration: Result of an exact enumeration; computed when None
    """
    report = EqualityCaseReport()
    expected_supports = set()
    for x in range(8):
        a = NonnegVector24.lift_up([r + x for r in EXTREMAL_A])
        b = NonnegVector24.lift_up([r - x for r in EXTREMAL_B])
        check = prop52_check(a, b)
        A24, B24 = _lift_residue_set(a), _lift_residue_set(b)
        partner = extremal_partner(A24)
        report.cases.append(
            EqualityCase(
                x=x,
                support_a=a.support(),
                support_b=b.support(),
                lhs=check.lhs,
                rhs=check.rhs,
                equality=bool(check.data["equality"]) and check.lhs == 0,
                partner_unique=partner == B24 and avoids_squares(A24, B24),
            )
        )
        expected_supports.add(tuple(a.support()))

    if enumeration is None:
        enumeration = enumerate_norm_bound()
    translated = set()
    for extremizer in enumeration.extremizers_phi:
        mirrored = extremizer.reflect()
        for s in range(8):
            translated.add(tuple(mirrored.shift(s).support()))
    report.enumeration_translates = translated == expected_supports

    base_a = NonnegVector24.lift_up(EXTREMAL_A)
    moved_b = NonnegVector24.from_support(
        [t for t in NonnegVector24.lift_up(EXTREMAL_B).support() if t != 2] + [3]
    )
    block = NonnegVector24.from_support(range(9))
    report.non_extremal_strict = {
        "one_element_moved": _strict(base_a, moved_b),
        "initial_block": _strict(block, block),
    }
    logger.info(f"Equality case analysis: {'pass' if report.passed else 'fail'}")
    return report
