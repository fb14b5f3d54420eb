"""
Suite Orchestrator

Runs the acceptance suite stage by stage in dependency order and collects
every verification report.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.ring_core import ResidueWeight, cyclic_convolve, dft, qr_profile, random_weight
from src.modular_verifier import (
    CheckKind,
    ReportLog,
    VerificationReport,
    lift_identity_check,
    theorem31_check,
)
from src.extremal_search import (
    ResidueSet,
    SearchWitness,
    extremal_partner,
    known_constructions,
)
from src.optimization_verifier import (
    EnumerationMode,
    NonnegVector24,
    PhiVector,
    amgm_check,
    case_count,
    convexity_check,
    equality_case_analysis,
    footnote_check,
    homogeneity_check,
    prop36_check,
    prop53_batch,
    shift_invariance_check,
)
from src.integer_lab import (
    ApproximantParams,
    GeneratorKind,
    SetGenerator,
    count_square_pairs,
    count_square_pairs_naive,
    uniform_random_set,
)

logger = logging.getLogger(__name__)

STAGES = (
    "ring_core",
    "modular_verifier",
    "extremal_search",
    "optimization_verifier",
    "integer_lab",
)

EXTREMAL_PAIR_8 = ((0, 1, 5), (2, 5, 6))
EXPECTED_OBJECTIVES = {3: 1, 8: 3, 24: 9}
EXPECTED_EXTREMIZERS = 3  # per side


def _coprime_pairs(rng: np.random.Generator, count: int, limit: int) -> List[Tuple[int, int]]:
    """Seeded coprime pairs 2 <= q1, q2 <= limit."""
    pairs = []
    while len(pairs) < count:
        q1, q2 = (int(x) for x in rng.integers(2, limit + 1, size=2))
        if math.gcd(q1, q2) == 1:
            pairs.append((q1, q2))
    return pairs


@dataclass
class SuiteResult:
    """Reports of one suite run grouped by stage, plus the large artifacts."""
    log: ReportLog
    stages: Dict[str, List[VerificationReport]] = field(default_factory=dict)
    artifacts: Dict[str, Any] = field(default_factory=dict)
    overrides: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.log.all_passed

    def failures(self) -> List[VerificationReport]:
        return self.log.get_failures()

    def to_dict(self) -> Dict[str, Any]:
        stages = {}
        for name, reports in self.stages.items():
            failed = [r for r in reports if not r.passed]
            stages[name] = {
                "total": len(reports),
                "failed": len(failed),
                "pass": not failed,
                "failures": [r.to_dict() for r in failed],
            }
        return {
            "pass": self.passed,
            "summary": self.log.get_summary(),
            "stages": stages,
            "artifacts": dict(self.artifacts),
            "overrides": dict(self.overrides),
        }


class SuiteOrchestrator:
    """
    Orchestrates the acceptance suite.

    Responsible for:
    - Running the stages in dependency order
    - Applying overrides (perturbed phi, float identity tolerance)
    - Collecting check failures without stopping; structural errors propagate
    """

    def __init__(self, config: Dict, system):
        """
        Initialize the suite orchestrator.

        Args:
            config: Full system configuration
            system: SumsetSquaresSystem instance
        """
        self.config = config
        self.system = system
        self.base_seed = (config.get("integration") or {}).get("seed", 2024)
        self.seed = self.base_seed
        self.runs = 0

        logger.info(f"Suite orchestrator initialized (seed {self.base_seed})")

    def _section(self, name: str) -> Dict:
        return self.config.get(name) or {}

    def run(
        self,
        phi_constant=None,
        tolerance: Optional[float] = None,
        seed: Optional[int] = None,
    ) -> SuiteResult:
        """
        Run every stage.

        Args:
            phi_constant: Replaces the constant 16/3 of phi in the enumeration
            tolerance: Replaces the tolerance of the float identity checks
            seed: Base seed of every randomized stage (config seed when None)

        Returns:
            SuiteResult; a failing check never stops the run
        """
        self.seed = self.base_seed if seed is None else seed
        log = ReportLog(self._section("integration"))
        result = SuiteResult(log=log)
        if phi_constant is not None:
            result.overrides["phi_constant"] = str(Fraction(phi_constant))
        if tolerance is not None:
            result.overrides["tolerance"] = tolerance

        stages = {
            "ring_core": self._ring_core_stage,
            "modular_verifier": lambda: self._modular_stage(tolerance),
            "extremal_search": self._search_stage,
            "optimization_verifier": lambda: self._optimization_stage(phi_constant, result),
            "integer_lab": lambda: self._integer_stage(result),
        }
        for name in STAGES:
            logger.info(f"Suite stage {name}...")
            reports = stages[name]()
            log.extend(reports)
            result.stages[name] = reports
            failed = sum(not r.passed for r in reports)
            logger.info(f"Suite stage {name}: {len(reports)} checks, {failed} failed")

        self.runs += 1
        logger.info(f"Suite finished: {'pass' if result.passed else 'fail'}")
        return result

    def _ring_core_stage(self) -> List[VerificationReport]:
        """Profile mass, CRT multiplicativity, Parseval and the convolution theorem."""
        cfg = self._section("ring_core")
        rng = np.random.default_rng(self.seed)
        reports = []
        for q in cfg.get("property_moduli", [8, 24, 36, 100]):
            profile = qr_profile(q)
            reports.append(_exact_identity("qr_profile_mass", profile.total(), q, q))

            w = random_weight(q, rng)
            v = random_weight(q, rng)
            spectrum = dft(w)
            reports.append(
                VerificationReport(
                    lemma="parseval",
                    kind=CheckKind.IDENTITY,
                    lhs=float(np.sum(w.as_array() ** 2)) / q,
                    rhs=spectrum.energy(),
                    q=q,
                )
            )
            conv = dft(cyclic_convolve(w, v))
            product = spectrum.coeffs * dft(v).coeffs
            reports.append(
                VerificationReport(
                    lemma="convolution_theorem",
                    kind=CheckKind.IDENTITY,
                    lhs=float(np.max(np.abs(conv.coeffs - product))),
                    rhs=0.0,
                    q=q,
                )
            )
        # f_{q1 q2} = f_{q1} f_{q2} under CRT for coprime moduli
        for q1, q2 in _coprime_pairs(rng, cfg.get("crt_pairs", 5), cfg.get("crt_max", 40)):
            big = qr_profile(q1 * q2)
            left, right = qr_profile(q1), qr_profile(q2)
            agree = all(big[t] == left[t] * right[t] for t in range(q1 * q2))
            reports.append(_exact_identity("qr_profile_crt", int(agree), 1, q1 * q2))
        return reports

    def _modular_stage(self, tolerance: Optional[float]) -> List[VerificationReport]:
        cfg = self._section("modular_verifier")
        reports = []
        for q in cfg.get("moduli", [24, 48, 120, 240]):
            reports.extend(self.system.verify_modular(q, seed=self.seed, tolerance=tolerance))
        reports.extend(self.system.gauss_bounds())
        reports.append(self.system.gauss_value_check(48, 1))

        rng = np.random.default_rng(self.seed + 31)
        cases = cfg.get("theorem_cases", 125)
        for q in cfg.get("theorem_moduli", [8, 24, 36, 100]):
            for eps in cfg.get("theorem_epsilons", [0.05, 0.1]):
                target = 3 / 8 + eps
                for _ in range(cases):
                    wA = random_weight(q, rng, target_mean=target)
                    wB = random_weight(q, rng, target_mean=target)
                    reports.append(theorem31_check(wA, wB, eps, seed=self.seed + 31))
        # exact weights: the lift identity compares rationals
        wA = ResidueWeight.indicator(8, EXTREMAL_PAIR_8[0])
        wB = ResidueWeight.indicator(8, EXTREMAL_PAIR_8[1])
        reports.append(lift_identity_check(wA, wB))
        return reports

    def _search_stage(self) -> List[VerificationReport]:
        cfg = self._section("extremal_search")
        reports = []
        for q in cfg.get("suite_moduli", [3, 8]):
            witness = self.system.search(q)
            side = {"certified": witness.certified, "optimal": witness.optimal}
            if q == 8:
                expected = SearchWitness.certify(
                    ResidueSet.from_residues(8, EXTREMAL_PAIR_8[0]),
                    ResidueSet.from_residues(8, EXTREMAL_PAIR_8[1]),
                )
                side["translate_equivalent"] = witness.translate_equivalent(expected)
            reports.append(
                VerificationReport(
                    lemma="extremal_search",
                    kind=CheckKind.IDENTITY,
                    lhs=witness.objective,
                    rhs=EXPECTED_OBJECTIVES.get(q, witness.objective),
                    tolerance=0.0,
                    q=q,
                    side_conditions=side,
                    data=witness.to_dict(),
                )
            )
        for construction in known_constructions():
            reports.append(
                _exact_identity(
                    "known_construction",
                    int(construction.verified),
                    1,
                    construction.q,
                    data=construction.to_dict(),
                )
            )
        # translation covariance of the maximal partner
        A = ResidueSet.from_residues(24, (0, 1, 5, 8, 9, 13, 16, 17, 21))
        covariant = all(
            extremal_partner(A.translate(x)) == extremal_partner(A).translate(-x) for x in range(24)
        )
        reports.append(_exact_identity("partner_translation_covariance", int(covariant), 1, 24))
        return reports

    def _optimization_stage(self, phi_constant, result: SuiteResult) -> List[VerificationReport]:
        cfg = self._section("optimization_verifier")
        rng = np.random.default_rng(self.seed + 53)
        reports = []

        enumeration = self.system.optimize(EnumerationMode.EXACT, phi_constant=phi_constant)
        result.artifacts["enumeration"] = enumeration.to_dict()
        complete = enumeration.case_count == case_count()
        worst = max(enumeration.max_phi, enumeration.max_phi_tilde)
        extremizers = {}
        if complete:
            extremizers = {
                "extremizers_phi": len(enumeration.extremizers_phi) == EXPECTED_EXTREMIZERS,
                "extremizers_tilde": len(enumeration.extremizers_tilde) == EXPECTED_EXTREMIZERS,
            }
        reports.append(
            VerificationReport(
                lemma="norm_bound",
                kind=CheckKind.UPPER_BOUND,
                lhs=worst,
                rhs=enumeration.norm_bound,
                tolerance=0.0,
                q=24,
                side_conditions=extremizers,
                data={"case_count": enumeration.case_count},
            )
        )
        # the equality cases are read off the extremizers of a complete scan
        if complete:
            equality = equality_case_analysis(enumeration)
            result.artifacts["equality_cases"] = equality.to_dict()
            reports.append(
                VerificationReport(
                    lemma="equality_cases",
                    kind=CheckKind.IDENTITY,
                    lhs=sum(c.equality and c.partner_unique for c in equality.cases),
                    rhs=8,
                    tolerance=0.0,
                    q=24,
                    side_conditions={
                        "enumeration_translates": equality.enumeration_translates,
                        **equality.non_extremal_strict,
                    },
                )
            )

        cases = cfg.get("batch_cases", 100_000)
        A = rng.random((cases, 24)) * rng.integers(0, 2, (cases, 24))
        B = rng.random((cases, 24)) * rng.integers(0, 2, (cases, 24))
        reports.append(prop53_batch(A, B, seed=self.seed + 53))

        epsilon = cfg.get("box_epsilon", 0.5)
        phi = PhiVector.standard()
        for _ in range(cfg.get("box_cases", 1000)):
            a = _unit_box_vector(rng, 9 + epsilon)
            b = _unit_box_vector(rng, 9 + epsilon)
            reports.append(prop36_check(a, b, epsilon))
            reports.append(amgm_check(a, b))
        for _ in range(200):
            x, y = (9 + epsilon) + 10 * rng.random(2)
            reports.append(footnote_check(float(x), float(y), epsilon))
        for _ in range(20):
            a = NonnegVector24.from_support(np.flatnonzero(rng.integers(0, 2, 24)))
            b = NonnegVector24.from_support(np.flatnonzero(rng.integers(0, 2, 24)))
            reports.append(shift_invariance_check(a, phi, int(rng.integers(24))))
            reports.append(convexity_check(a, b, phi))
            reports.append(homogeneity_check(a, Fraction(int(rng.integers(1, 10)), 7)))
        return reports

    def _integer_stage(self, result: SuiteResult) -> List[VerificationReport]:
        cfg = self._section("integer_lab")
        rng = np.random.default_rng(self.seed + 44)
        reports = []

        for _ in range(cfg.get("oracle_instances", 50)):
            N = int(rng.integers(1, cfg.get("oracle_max_N", 2000) + 1))
            A = uniform_random_set(N, float(rng.random()), rng)
            B = uniform_random_set(N, float(rng.random()), rng)
            reports.append(
                _exact_identity(
                    "square_count_oracle",
                    count_square_pairs(A, B),
                    count_square_pairs_naive(A, B),
                    None,
                    {"N": N},
                )
            )

        approx = cfg.get("approximant", {})
        params = ApproximantParams(Q=approx.get("Q", 12), K=approx.get("K", 10))
        for i in range(approx.get("instances", 20)):
            A = uniform_random_set(approx.get("N", 4800), float(rng.uniform(0.3, 0.7)), rng)
            reports.extend(self.system.approximant(A, params, seed=self.seed + i))

        N = cfg.get("N", 100_000)
        epsilon = Fraction(cfg.get("epsilon", 0.0625)).limit_denominator(10_000)
        lift_a, lift_b = (
            SetGenerator(GeneratorKind.RESIDUE_LIFT, {"residues": list(side), "modulus": 8})
            for side in EXTREMAL_PAIR_8
        )
        lift_count = self.system.count(N, lift_a, lift_b)
        reports.append(_exact_identity("extremal_lift_count", lift_count, 0, 8, {"N": N}))

        density = Fraction(3, 8) + epsilon
        boosted_a = SetGenerator(
            GeneratorKind.BOOSTED_LIFT,
            {"residues": list(EXTREMAL_PAIR_8[0]), "modulus": 8, "density": density},
            seed=self.seed,
        )
        boosted_b = SetGenerator(
            GeneratorKind.BOOSTED_LIFT,
            {"residues": list(EXTREMAL_PAIR_8[1]), "modulus": 8, "density": density},
            seed=self.seed + 1,
        )
        experiment = self.system.experiment(N, epsilon, boosted_a, boosted_b)
        result.artifacts["experiment"] = experiment.to_dict()
        reports.append(
            VerificationReport(
                lemma="integer_experiment",
                kind=CheckKind.LOWER_BOUND,
                lhs=experiment.count,
                rhs=experiment.bound,
                tolerance=0.0,
                epsilon=float(epsilon),
                seed=self.seed,
                data={"N": N, "margin": experiment.margin},
            )
        )

        audit_cfg = cfg.get("audit", {})
        audit_params = ApproximantParams.from_qbar(audit_cfg.get("qbar", 3), audit_cfg.get("K", 10))
        audit = self.system.audit(N, boosted_a, boosted_b, audit_params, epsilon)
        result.artifacts["audit"] = audit.to_dict()
        reports.append(
            VerificationReport(
                lemma="decomposition_audit",
                kind=CheckKind.UPPER_BOUND,
                lhs=audit.relative_error,
                rhs=0.0,
                tolerance=1e-6,
                seed=self.seed,
                data={"N": N, "count": audit.count},
            )
        )
        return reports


def _exact_identity(
    lemma: str, lhs, rhs, q: Optional[int], data: Optional[Dict] = None
) -> VerificationReport:
    return VerificationReport(
        lemma=lemma,
        kind=CheckKind.IDENTITY,
        lhs=int(lhs),
        rhs=int(rhs),
        tolerance=0.0,
        q=q,
        data=data or {},
    )


def _unit_box_vector(rng: np.random.Generator, minimum_sum: float) -> NonnegVector24:
    """Uniform [0,1]^24 draw pushed toward 1 until the sum reaches minimum_sum."""
    w = random_weight(24, rng, target_mean=minimum_sum / 24)
    return NonnegVector24(tuple(float(v) for v in w.as_array()))
