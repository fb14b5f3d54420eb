"""
The modular square-count lower bound and its lift-up reduction.

For weights with sum >= (3/8 + eps) q, the weighted square count is at
least (eps / sqrt 5) q. Moduli not divisible by 24 are handled by lifting
to Z/24qZ, which preserves both the mean and the normalized count.
"""

import logging
import math
from fractions import Fraction
from typing import Optional

from src.ring_core.errors import ModulusMismatchError, PreconditionError
from src.ring_core.fourier import weighted_square_count
from src.ring_core.residues import qr_profile
from src.ring_core.weights import RANGE_SLACK, ResidueWeight
from src.modular_verifier.lemmas import key_inequality_check
from src.modular_verifier.projections import PROJECTION_MODULUS, lift_to_24q
from src.modular_verifier.reports import (
    DEFAULT_IDENTITY_TOLERANCE,
    DEFAULT_INEQUALITY_TOLERANCE,
    CheckKind,
    VerificationReport,
)

logger = logging.getLogger(__name__)

DENSITY_THRESHOLD = Fraction(3, 8)


def c_epsilon(epsilon) -> float:
    """Constant of the modular bound, c(eps) = eps / sqrt(5)."""
    return float(epsilon) / math.sqrt(5.0)


def lift_identity_check(
    wA: ResidueWeight,
    wB: ResidueWeight,
    tolerance: float = DEFAULT_IDENTITY_TOLERANCE,
) -> VerificationReport:
    """
    Normalized square count before and after lifting to Z/24qZ.

    lhs = (1/q) sum_t (wA*wB)(t) f_q(t)
    rhs = (1/24q) sum_t (wA~*wB~)(t) f_24q(t)

    Mean preservation of both weights is recorded as side conditions; for
    exact weights everything is compared in rational arithmetic.
    """
    if wA.modulus != wB.modulus:
        raise ModulusMismatchError(wA.modulus, wB.modulus, "lift_identity_check")
    q = wA.modulus
    liftA, liftB = lift_to_24q(wA), lift_to_24q(wB)
    big = liftA.modulus

    lhs = weighted_square_count(wA, wB, qr_profile(q)) / q
    rhs = weighted_square_count(liftA, liftB, qr_profile(big)) / big

    def mean_kept(w, lifted) -> bool:
        if w.is_exact:
            return w.mean() == lifted.mean()
        return abs(w.mean() - lifted.mean()) <= tolerance

    return VerificationReport(
        lemma="lift_up",
        kind=CheckKind.IDENTITY,
        lhs=lhs,
        rhs=rhs,
        tolerance=tolerance,
        q=q,
        side_conditions={
            "mean_A_preserved": mean_kept(wA, liftA),
            "mean_B_preserved": mean_kept(wB, liftB),
        },
    )


def check_density(w: ResidueWeight, epsilon, label: str) -> None:
    required = (DENSITY_THRESHOLD + Fraction(epsilon)) * w.modulus
    total = w.total()
    if w.is_exact:
        ok = total >= required
    else:
        ok = total >= float(required) - RANGE_SLACK * w.modulus
    if not ok:
        measured = {
            "q": w.modulus,
            f"density_{label}": float(total) / w.modulus,
            "required": float(required) / w.modulus,
        }
        logger.error(f"Density precondition violated: {measured}")
        raise PreconditionError("weight sum below (3/8 + eps) q", measured)


def theorem31_check(
    wA: ResidueWeight,
    wB: ResidueWeight,
    epsilon,
    tolerance: float = DEFAULT_INEQUALITY_TOLERANCE,
    seed: Optional[int] = None,
) -> VerificationReport:
    """
    Check sum_t (wA*wB)(t) f_q(t) >= (eps / sqrt 5) q.

    When 24 does not divide q the count is evaluated on the lift to Z/24qZ
    (rescaled back to Z/qZ) and the combined Fourier inequality is checked
    there; otherwise the inequality is checked on Z/qZ directly.

    Args:
        wA: Weight on Z/qZ
        wB: Weight on Z/qZ
        epsilon: Density excess, eps >= 0
        tolerance: Slack on the lower bound
        seed: Seed of the generator that produced the weights, if any

    Raises:
        ModulusMismatchError: wA and wB live on different moduli
        PreconditionError: eps < 0 or a weight sum is below (3/8 + eps) q
    """
    if wA.modulus != wB.modulus:
        raise ModulusMismatchError(wA.modulus, wB.modulus, "theorem31_check")
    if epsilon < 0:
        raise PreconditionError("epsilon must be non-negative", {"epsilon": epsilon})
    check_density(wA, epsilon, "A")
    check_density(wB, epsilon, "B")

    q = wA.modulus
    lifted = q % PROJECTION_MODULUS != 0
    if lifted:
        bigA, bigB = lift_to_24q(wA), lift_to_24q(wB)
        count = weighted_square_count(bigA, bigB, qr_profile(bigA.modulus)) / PROJECTION_MODULUS
    else:
        bigA, bigB = wA, wB
        count = weighted_square_count(wA, wB, qr_profile(q))

    key = key_inequality_check(bigA, bigB)
    c = c_epsilon(epsilon)
    return VerificationReport(
        lemma="modular_square_count",
        kind=CheckKind.LOWER_BOUND,
        lhs=count,
        rhs=c * q,
        tolerance=tolerance,
        q=q,
        epsilon=float(epsilon),
        c_epsilon=c,
        seed=seed,
        data={
            "lifted": lifted,
            "key_inequality_holds": key.passed,
            "density_A": float(wA.mean()),
            "density_B": float(wB.mean()),
        },
    )
