"""
Piecewise mod-Q approximants of integer sets and their balanced functions.

[1, N] is cut into K intervals I_k = (kN/K, (k+1)N/K]. On each interval the
approximant replaces 1_A by its average over every residue class mod Q, so
the approximant and the set carry the same mass on every (interval, residue)
cell. Weights are kept as integer numerator/denominator tables; every cell
identity is therefore an exact integer statement.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.ring_core.errors import ModulusMismatchError, PreconditionError
from src.ring_core.weights import ResidueWeight
from src.modular_verifier.reports import CheckKind, VerificationReport
from src.modular_verifier.theorem import c_epsilon, check_density
from src.integer_lab.counting import square_dot
from src.integer_lab.sets import IntegerSet

logger = logging.getLogger(__name__)

INTERVAL_MARGIN = 200          # lower bound is c(eps) M^{3/2} / (200 sqrt(k1 + k2))
MIN_PERIODS_PER_INTERVAL = 10  # floor(M / Q) >= 10


def lcm_upto(n: int) -> int:
    """lcm(1, ..., n)"""
    return reduce(lambda x, y: x * y // math.gcd(x, y), range(1, n + 1), 1)


@dataclass(frozen=True)
class ApproximantParams:
    """
    Modulus Q and interval count K (eta = 1/K).

    ``Qbar`` is set when Q = lcm(1..Qbar); it feeds the error-term bounds
    of the decomposition audit.
    """

    Q: int
    K: int
    Qbar: Optional[int] = None

    def __post_init__(self):
        if self.Q < 1 or self.K < 1:
            raise ValueError(f"Q and K must be positive, got Q={self.Q}, K={self.K}")
        if self.Qbar is not None and lcm_upto(self.Qbar) != self.Q:
            raise ValueError(f"Q={self.Q} is not lcm(1..{self.Qbar})")

    @classmethod
    def from_qbar(cls, qbar: int, K: int) -> "ApproximantParams":
        return cls(Q=lcm_upto(qbar), K=K, Qbar=qbar)

    @property
    def eta(self) -> Fraction:
        return Fraction(1, self.K)

    def validate(self, N: int) -> None:
        """
        Raises:
            PreconditionError: eta * N < Q, so an interval can miss a residue class
        """
        if self.eta * N < self.Q:
            measured = {"N": N, "Q": self.Q, "K": self.K, "eta_N": float(self.eta * N)}
            logger.error(f"Approximant parameters rejected: {measured}")
            raise PreconditionError("interval shorter than modulus", measured)

    def interval(self, N: int, k: int) -> Tuple[int, int]:
        """First and last integer of I_k."""
        return (k * N) // self.K + 1, ((k + 1) * N) // self.K

    def cell_index(self, N: int) -> np.ndarray:
        """k * Q + (n mod Q) for n = 1..N."""
        n = np.arange(1, N + 1, dtype=np.int64)
        k = (n * self.K - 1) // N
        return k * self.Q + n % self.Q

    def to_dict(self) -> Dict[str, Any]:
        return {"Q": self.Q, "K": self.K, "eta": str(self.eta), "Qbar": self.Qbar}


@dataclass(frozen=True, eq=False)
class PiecewiseWeight:
    """
    w(n) = numerators[k, n mod Q] / denominators[k, n mod Q] for n in I_k.

    ``numerators`` counts set elements per (interval, residue) cell and
    ``denominators`` counts all integers in the cell.
    """

    N: int
    params: ApproximantParams
    numerators: np.ndarray
    denominators: np.ndarray

    def value(self, n: int) -> Fraction:
        k = (n * self.params.K - 1) // self.N
        r = n % self.params.Q
        return Fraction(int(self.numerators[k, r]), int(self.denominators[k, r]))

    def as_array(self) -> np.ndarray:
        """Float values on [1, N] (index n - 1)."""
        ratio = (self.numerators / self.denominators).ravel()
        return ratio[self.params.cell_index(self.N)]

    def cell_masses(self) -> np.ndarray:
        """
        Exact sum of w over each cell.

        w is constant count / size on a cell of that size, so the mass is the
        stored count.
        """
        return self.numerators.copy()

    def total_mass(self) -> Fraction:
        return Fraction(int(self.cell_masses().sum()))

    def block_weight(self, k: int) -> ResidueWeight:
        """The interval-k weight as an exact ResidueWeight on Z/QZ."""
        return ResidueWeight.from_values(
            [Fraction(int(a), int(b)) for a, b in zip(self.numerators[k], self.denominators[k])]
        )


def _cell_tally(A: IntegerSet, params: ApproximantParams) -> Tuple[np.ndarray, np.ndarray]:
    cells = params.cell_index(A.N)
    size = params.K * params.Q
    members = np.bincount(cells, weights=A.indicator(), minlength=size)
    everything = np.bincount(cells, minlength=size)
    shape = (params.K, params.Q)
    return members.astype(np.int64).reshape(shape), everything.astype(np.int64).reshape(shape)


def build_approximant(A: IntegerSet, params: ApproximantParams) -> PiecewiseWeight:
    """
    Average 1_A over every (interval, residue mod Q) cell.

    Raises:
        PreconditionError: eta * N < Q
    """
    params.validate(A.N)
    numerators, denominators = _cell_tally(A, params)
    logger.debug(f"Approximant for |A|={len(A)} with Q={params.Q}, K={params.K}")
    return PiecewiseWeight(A.N, params, numerators, denominators)


def mass_identity_holds(A: IntegerSet, weight: PiecewiseWeight) -> bool:
    """Per-cell mass of the approximant equals the per-cell count of A."""
    counts, _ = _cell_tally(A, weight.params)
    return bool(np.all(weight.cell_masses() == counts))


@dataclass(frozen=True, eq=False)
class BalancedFunction:
    """f = 1_A - w on [1, N]."""

    N: int
    indicator: np.ndarray
    weight: PiecewiseWeight

    @property
    def values(self) -> np.ndarray:
        return self.indicator - self.weight.as_array()

    def cell_sums(self) -> np.ndarray:
        """Exact sums of f over each cell; all zero by construction."""
        counts, _ = _cell_tally(IntegerSet(self.N, self.indicator.astype(bool)), self.weight.params)
        return counts - self.weight.cell_masses()

    def transform(self, theta_num: int, theta_den: int, beta: float) -> complex:
        """
        sum_n f(n) e(-(a/q + beta) n) with a/q = theta_num / theta_den.

        The rational part of the phase is reduced mod 1 in integers.
        """
        n = np.arange(1, self.N + 1, dtype=np.int64)
        rational = (theta_num * n) % theta_den / theta_den
        phase = np.mod(rational + beta * n.astype(np.float64), 1.0)
        return complex(np.dot(self.values, np.exp(-2j * np.pi * phase)))


def balanced_function(A: IntegerSet, params: ApproximantParams) -> BalancedFunction:
    weight = build_approximant(A, params)
    return BalancedFunction(A.N, A.indicator(), weight)


def balanced_fourier_check(
    A: IntegerSet,
    params: ApproximantParams,
    a: int,
    q: int,
    beta: float,
    tolerance: Optional[float] = None,
    balanced: Optional[BalancedFunction] = None,
) -> VerificationReport:
    """
    |f^(a/q + beta)| <= 2 |beta| eta N^2 for q dividing Q.

    Args:
        A: Integer set
        params: Approximant parameters
        a: Numerator of the rational frequency
        q: Denominator; must divide Q
        beta: Offset from a/q
        tolerance: Slack; defaults to 1e-9 N
        balanced: Precomputed balanced function of A, reused across a sweep

    Raises:
        PreconditionError: q does not divide Q
    """
    if q < 1 or params.Q % q != 0:
        raise PreconditionError("q must divide Q", {"q": q, "Q": params.Q})
    f = balanced or balanced_function(A, params)
    N = A.N
    value = f.transform(a, q, beta)
    return VerificationReport(
        lemma="balanced_fourier",
        kind=CheckKind.UPPER_BOUND,
        lhs=abs(value),
        rhs=2 * abs(beta) * float(params.eta) * N * N,
        tolerance=1e-9 * N if tolerance is None else tolerance,
        q=q,
        data={"a": a, "beta": beta, "N": N, "Q": params.Q, "K": params.K},
    )


def _scaled_integers(w: ResidueWeight) -> Tuple[np.ndarray, int]:
    denominator = reduce(lambda x, y: x * y // math.gcd(x, y), (v.denominator for v in w.values), 1)
    return np.array([int(v * denominator) for v in w.values], dtype=np.int64), denominator


def interval_lower_bound_check(
    wbar1: ResidueWeight,
    wbar2: ResidueWeight,
    M: int,
    k1: int,
    k2: int,
    epsilon,
) -> VerificationReport:
    """
    sum_n (w1*w2)(n) 1_S(n) >= c(eps) M^{3/2} / (200 sqrt(k1 + k2)).

    w_i(n) = wbar_i(n mod Q) on [k_i M, (k_i + 1) M] and 0 elsewhere. Exact
    weights are scaled to integers so the left side is an exact rational.

    Raises:
        ModulusMismatchError: the weights live on different moduli
        PreconditionError: a mean is below 3/8 + eps, floor(M / Q) < 10,
            or k1 + k2 < 1
    """
    if wbar1.modulus != wbar2.modulus:
        raise ModulusMismatchError(wbar1.modulus, wbar2.modulus, "interval_lower_bound_check")
    Q = wbar1.modulus
    check_density(wbar1, epsilon, "1")
    check_density(wbar2, epsilon, "2")
    if M // Q < MIN_PERIODS_PER_INTERVAL or k1 < 0 or k2 < 0 or k1 + k2 < 1:
        measured = {"M": M, "Q": Q, "k1": k1, "k2": k2}
        logger.error(f"Interval precondition violated: {measured}")
        raise PreconditionError("need floor(M / Q) >= 10 and k1 + k2 >= 1", measured)

    starts = (k1 * M, k2 * M)
    residues = [np.arange(s, s + M + 1, dtype=np.int64) % Q for s in starts]
    if wbar1.is_exact and wbar2.is_exact:
        (v1, d1), (v2, d2) = _scaled_integers(wbar1), _scaled_integers(wbar2)
        raw = square_dot(v1[residues[0]], starts[0], v2[residues[1]], starts[1])
        lhs = Fraction(int(raw), d1 * d2)
    else:
        lhs = float(
            square_dot(
                wbar1.as_array()[residues[0]], starts[0], wbar2.as_array()[residues[1]], starts[1]
            )
        )
    c = c_epsilon(epsilon)
    rhs = c * M ** 1.5 / (INTERVAL_MARGIN * math.sqrt(k1 + k2))
    return VerificationReport(
        lemma="interval_lower_bound",
        kind=CheckKind.LOWER_BOUND,
        lhs=lhs,
        rhs=rhs,
        tolerance=0.0,
        q=Q,
        epsilon=float(epsilon),
        c_epsilon=c,
        data={"M": M, "k1": k1, "k2": k2},
    )


def dense_blocks(weight: PiecewiseWeight, epsilon) -> List[int]:
    """
    Intervals whose weight puts mass >= (3/8 + eps/2) Q on one full period.

    Any Q consecutive integers of I_k hit every residue once, so the
    period sum is the sum of the block weight over Z/QZ.
    """
    required = (Fraction(3, 8) + Fraction(epsilon) / 2) * weight.params.Q
    return [k for k in range(weight.params.K) if weight.block_weight(k).total() >= required]
