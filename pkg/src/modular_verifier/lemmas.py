"""
Fourier-side checks on Z/qZ.

Covers the Fourier representation of the weighted square count, its split
into the mod-24 term and the off-diagonal term, the Gauss-sum bound on the
off-diagonal frequencies, the off-diagonal estimate, and the combined
inequality that feeds the 48-variable optimization.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np

from src.ring_core.errors import ModulusMismatchError, PreconditionError
from src.ring_core.fourier import dft, weighted_square_count
from src.ring_core.residues import qr_profile
from src.ring_core.weights import ResidueWeight, WeightRole
from src.modular_verifier.projections import PROJECTION_MODULUS, project_mod24
from src.modular_verifier.reports import (
    DEFAULT_IDENTITY_TOLERANCE,
    DEFAULT_INEQUALITY_TOLERANCE,
    CheckKind,
    VerificationReport,
)

logger = logging.getLogger(__name__)

GAUSS_BOUND = 1.0 / math.sqrt(5.0)


def _require_same_modulus(wA: ResidueWeight, wB: ResidueWeight, operation: str) -> int:
    if wA.modulus != wB.modulus:
        raise ModulusMismatchError(wA.modulus, wB.modulus, operation)
    return wA.modulus


def _require_multiple_of_24(q: int, operation: str):
    if q % PROJECTION_MODULUS != 0:
        logger.error(f"{operation} called with q={q}")
        raise PreconditionError(f"{operation} needs 24 | q", {"q": q})


def _frequency_terms(wA: ResidueWeight, wB: ResidueWeight) -> np.ndarray:
    """Array of wA^(m) wB^(m) f_q^(-m) over m in Z/qZ."""
    profile = qr_profile(wA.modulus)
    return dft(wA).coeffs * dft(wB).coeffs * dft(profile).at_negative()


def _mod24_mask(q: int) -> np.ndarray:
    m = np.arange(q, dtype=np.int64)
    return (PROJECTION_MODULUS * m) % q == 0


@dataclass(frozen=True)
class FourierSplit:
    """Fourier sum split by whether q divides 24m."""
    total: complex
    mod24_term: complex
    off_diagonal: complex


def fourier_split(wA: ResidueWeight, wB: ResidueWeight) -> FourierSplit:
    """
    Split sum_m wA^(m) wB^(m) f_q^(-m) into the frequencies with q | 24m and
    the rest.
    """
    q = _require_same_modulus(wA, wB, "fourier_split")
    terms = _frequency_terms(wA, wB)
    mask = _mod24_mask(q)
    return FourierSplit(
        total=complex(terms.sum()),
        mod24_term=complex(terms[mask].sum()),
        off_diagonal=complex(terms[~mask].sum()),
    )


def fourier_identity_check(
    wA: ResidueWeight,
    wB: ResidueWeight,
    tolerance: float = DEFAULT_IDENTITY_TOLERANCE,
) -> VerificationReport:
    """
    Compare the normalized weighted square count with its Fourier expansion.

    lhs = (1/q) sum_t (wA*wB)(t) f_q(t)
    rhs = Re sum_m wA^(m) wB^(m) f_q^(-m)

    The imaginary part of the expansion must vanish within tolerance.

    Raises:
        ModulusMismatchError: wA and wB live on different moduli
    """
    q = _require_same_modulus(wA, wB, "fourier_identity_check")
    lhs = weighted_square_count(wA, wB, qr_profile(q)) / q
    rhs = complex(_frequency_terms(wA, wB).sum())
    return VerificationReport(
        lemma="fourier_representation",
        kind=CheckKind.IDENTITY,
        lhs=lhs,
        rhs=rhs.real,
        tolerance=tolerance,
        q=q,
        side_conditions={"imaginary_part_vanishes": abs(rhs.imag) <= tolerance},
        data={"imaginary_part": rhs.imag},
    )


def mod24_term_check(
    wA: ResidueWeight,
    wB: ResidueWeight,
    tolerance: float = DEFAULT_IDENTITY_TOLERANCE,
) -> VerificationReport:
    """
    Compare the q | 24m part of the Fourier sum with the count of the mod-24
    projections: (1/24) sum_t (a*b)(t) f_24(t).

    Raises:
        PreconditionError: q is not a multiple of 24
    """
    q = _require_same_modulus(wA, wB, "mod24_term_check")
    _require_multiple_of_24(q, "mod24_term_check")

    split = fourier_split(wA, wB)
    a = project_mod24(wA).as_weight()
    b = project_mod24(wB).as_weight()
    rhs = weighted_square_count(a, b, qr_profile(PROJECTION_MODULUS)) / PROJECTION_MODULUS

    return VerificationReport(
        lemma="mod24_term",
        kind=CheckKind.IDENTITY,
        lhs=split.mod24_term.real,
        rhs=rhs,
        tolerance=tolerance,
        q=q,
        side_conditions={
            "imaginary_part_vanishes": abs(split.mod24_term.imag) <= tolerance
        },
    )


def decomposition_check(
    wA: ResidueWeight,
    wB: ResidueWeight,
    tolerance: float = DEFAULT_INEQUALITY_TOLERANCE,
) -> VerificationReport:
    """Full Fourier sum against mod-24 term plus off-diagonal term."""
    q = _require_same_modulus(wA, wB, "decomposition_check")
    split = fourier_split(wA, wB)
    recombined = split.mod24_term + split.off_diagonal
    return VerificationReport(
        lemma="fourier_decomposition",
        kind=CheckKind.IDENTITY,
        lhs=split.total.real,
        rhs=recombined.real,
        tolerance=tolerance,
        q=q,
        side_conditions={
            "imaginary_parts_agree": abs(split.total.imag - recombined.imag) <= tolerance
        },
    )


class GaussBoundClass(Enum):
    """Case of the Gauss-sum estimate, by q/gcd(m, q) mod 4"""
    ODD = "odd"                # q/g = 1 or 3 mod 4
    ZERO_MOD_4 = "zero_mod_4"  # q/g = 0 mod 4
    TWO_MOD_4 = "two_mod_4"    # q/g = 2 mod 4


@dataclass(frozen=True)
class GaussBoundEntry:
    m: int
    magnitude: float
    bound_class: GaussBoundClass
    g: int

    @property
    def within_bound(self) -> bool:
        return self.magnitude <= GAUSS_BOUND + DEFAULT_IDENTITY_TOLERANCE


def _bound_class(reduced: int) -> GaussBoundClass:
    residue = reduced % 4
    if residue == 0:
        return GaussBoundClass.ZERO_MOD_4
    if residue == 2:
        return GaussBoundClass.TWO_MOD_4
    return GaussBoundClass.ODD


def gauss_bound_report(q: int) -> List[GaussBoundEntry]:
    """
    Magnitudes |f_q^(-m)| over every m with q not dividing 24m.

    Args:
        q: Modulus, a multiple of 24

    Returns:
        One entry per qualifying m in increasing order (empty for q = 24)

    Raises:
        PreconditionError: q is not a multiple of 24
    """
    _require_multiple_of_24(q, "gauss_bound_report")
    coeffs = dft(qr_profile(q)).at_negative()
    mask = ~_mod24_mask(q)
    entries = []
    for m in np.nonzero(mask)[0]:
        m = int(m)
        g = math.gcd(m, q)
        entries.append(
            GaussBoundEntry(
                m=m,
                magnitude=float(abs(coeffs[m])),
                bound_class=_bound_class(q // g),
                g=g,
            )
        )
    logger.debug(f"Gauss bound sweep q={q}: {len(entries)} frequencies")
    return entries


def gauss_bound_check(
    q: int,
    tolerance: float = DEFAULT_IDENTITY_TOLERANCE,
) -> VerificationReport:
    """Largest off-diagonal |f_q^(-m)| against 1/sqrt(5)."""
    entries = gauss_bound_report(q)
    worst = max(entries, key=lambda e: e.magnitude, default=None)
    return VerificationReport(
        lemma="gauss_bound",
        kind=CheckKind.UPPER_BOUND,
        lhs=worst.magnitude if worst else 0.0,
        rhs=GAUSS_BOUND,
        tolerance=tolerance,
        q=q,
        data={
            "frequencies": len(entries),
            "worst_m": worst.m if worst else None,
        },
    )


def _require_weight_role(w: ResidueWeight, operation: str):
    if w.role is not WeightRole.WEIGHT:
        raise PreconditionError(f"{operation} needs [0,1]-valued weights")


def offdiagonal_bound_check(
    wA: ResidueWeight,
    wB: ResidueWeight,
    tolerance: float = DEFAULT_INEQUALITY_TOLERANCE,
) -> VerificationReport:
    """
    Off-diagonal Fourier mass against the projection spreads.

    lhs = (1/(24 sqrt 5)) sqrt(sum(a - a^2)) sqrt(sum(b - b^2))
    rhs = |sum_{m : q does not divide 24m} wA^(m) wB^(m) f_q^(-m)|
    """
    q = _require_same_modulus(wA, wB, "offdiagonal_bound_check")
    _require_multiple_of_24(q, "offdiagonal_bound_check")
    _require_weight_role(wA, "offdiagonal_bound_check")
    _require_weight_role(wB, "offdiagonal_bound_check")

    spread_a = float(project_mod24(wA).spread())
    spread_b = float(project_mod24(wB).spread())
    bound = math.sqrt(max(spread_a, 0.0)) * math.sqrt(max(spread_b, 0.0))
    bound /= PROJECTION_MODULUS * math.sqrt(5.0)
    off = fourier_split(wA, wB).off_diagonal

    return VerificationReport(
        lemma="offdiagonal_bound",
        kind=CheckKind.LOWER_BOUND,
        lhs=bound,
        rhs=abs(off),
        tolerance=tolerance,
        q=q,
        data={"spread_a": spread_a, "spread_b": spread_b},
    )


def key_inequality_check(
    wA: ResidueWeight,
    wB: ResidueWeight,
    tolerance: float = DEFAULT_INEQUALITY_TOLERANCE,
) -> VerificationReport:
    """
    Combined bound, scaled by 24:

    (24/q) sum_t (wA*wB)(t) f_q(t)
        >= sum_t (a*b)(t) f_24(t) - (1/sqrt 5) sqrt(sum(a-a^2)) sqrt(sum(b-b^2))
    """
    q = _require_same_modulus(wA, wB, "key_inequality_check")
    _require_multiple_of_24(q, "key_inequality_check")

    pa = project_mod24(wA)
    pb = project_mod24(wB)
    lhs = PROJECTION_MODULUS * float(weighted_square_count(wA, wB, qr_profile(q))) / q
    projected = float(
        weighted_square_count(pa.as_weight(), pb.as_weight(), qr_profile(PROJECTION_MODULUS))
    )
    penalty = (
        math.sqrt(max(float(pa.spread()), 0.0))
        * math.sqrt(max(float(pb.spread()), 0.0))
        / math.sqrt(5.0)
    )
    return VerificationReport(
        lemma="key_inequality",
        kind=CheckKind.LOWER_BOUND,
        lhs=lhs,
        rhs=projected - penalty,
        tolerance=tolerance,
        q=q,
        data={"projected_count": projected, "penalty": penalty},
    )
