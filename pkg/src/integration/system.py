"""
Sumset Squares System - Main Integration Module

Loads the configuration and exposes every verifier, search and experiment
of the toolkit behind one object.
"""

import logging
import math
import os
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np
import yaml

from src.ring_core import QRProfile, qr_profile, random_weight
from src.modular_verifier import (
    ReportLog,
    VerificationReport,
    decomposition_check,
    fourier_identity_check,
    gauss_bound_check,
    key_inequality_check,
    lift_identity_check,
    mod24_term_check,
    offdiagonal_bound_check,
)
from src.modular_verifier.lemmas import GaussBoundEntry, gauss_bound_report
from src.modular_verifier.reports import DEFAULT_INEQUALITY_TOLERANCE, CheckKind
from src.extremal_search import (
    SearchBudget,
    SearchMode,
    SearchWitness,
    max_bipartite_density,
)
from src.optimization_verifier import (
    EnumerationMode,
    EnumerationResult,
    PhiVector,
    enumerate_norm_bound,
)
from src.optimization_verifier.enumeration import MAX_EXTRA_ONES
from src.integer_lab import (
    ApproximantParams,
    AuditReport,
    ExperimentReport,
    IntegerSet,
    SetGenerator,
    balanced_function,
    balanced_fourier_check,
    count_square_pairs,
    decomposition_audit,
    density_sweep,
    main_experiment,
    mass_identity_holds,
)
from src.integration.orchestrator import SuiteOrchestrator

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "SUMSET_SQUARES_CONFIG"
DEFAULT_CONFIG_PATH = "config/config.yaml"
DEFAULT_SEED = 2024
VERSION = "1.0.0"


class SumsetSquaresSystem:
    """
    Toolkit facade over the five verification packages.

    Responsible for:
    - Loading configuration (file, environment override, defaults)
    - Building the shared report log, search budget and suite orchestrator
    - Running single operations with config-driven defaults
    """

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize the system.

        Args:
            config_path: Path to configuration file; falls back to
                $SUMSET_SQUARES_CONFIG, then config/config.yaml
        """
        self.config = self._load_config(config_path)

        self.report_log = None
        self.search_budget = None
        self.orchestrator = None

        self.initialized = False

        logger.info("Sumset squares system created")

    def _load_config(self, config_path: Optional[str]) -> Dict:
        """
        Load system configuration.

        Args:
            config_path: Path to configuration file

        Returns:
            Configuration dictionary
        """
        if config_path is None:
            config_path = os.environ.get(CONFIG_ENV_VAR, DEFAULT_CONFIG_PATH)

        config_file = Path(config_path)

        if not config_file.exists():
            logger.warning(f"Config file not found: {config_path}, using defaults")
            return self._get_default_config()

        try:
            with open(config_file, "r") as f:
                config = yaml.safe_load(f)
            if not isinstance(config, dict):
                raise ValueError("top level of the config must be a mapping")
            logger.info(f"Configuration loaded from {config_path}")
            return config
        except Exception as e:
            logger.error(f"Error loading config: {e}")
            return self._get_default_config()

    def _get_default_config(self) -> Dict:
        """Get default configuration."""
        return {
            "ring_core": {
                "property_moduli": [8, 24, 36, 100],
                "crt_pairs": 5,
                "crt_max": 40,
            },
            "modular_verifier": {
                "tolerance": 1e-9,
                "inequality_tolerance": 1e-8,
                "cases": 100,
                "moduli": [24, 48, 120, 240],
                "gauss_q_max": 960,
                "theorem_moduli": [8, 24, 36, 100],
                "theorem_epsilons": [0.05, 0.1],
                "theorem_cases": 125,
            },
            "extremal_search": {
                "exhaustive_max_q": 16,
                "reduced_max_q": 24,
                "bnb_max_nodes": 2_000_000,
                "workers": 1,
                "suite_moduli": [3, 8, 24],
            },
            "optimization_verifier": {
                "workers": 1,
                "max_extra": MAX_EXTRA_ONES,
                "batch_cases": 100_000,
                "box_cases": 1000,
                "box_epsilon": 0.5,
            },
            "integer_lab": {
                "N": 100_000,
                "epsilon": 0.0625,
                "workers": 1,
                "oracle_instances": 50,
                "oracle_max_N": 2000,
                "approximant": {
                    "N": 4800,
                    "Q": 12,
                    "K": 10,
                    "instances": 20,
                    "beta_samples": 20,
                },
                "audit": {"qbar": 3, "K": 10},
            },
            "integration": {
                "seed": DEFAULT_SEED,
                "log_failures": True,
            },
            "logging": {
                "version": 1,
                "disable_existing_loggers": False,
                "formatters": {
                    "standard": {
                        "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                    },
                },
                "handlers": {
                    "console": {
                        "class": "logging.StreamHandler",
                        "formatter": "standard",
                        "stream": "ext://sys.stderr",
                    },
                },
                "root": {"level": "INFO", "handlers": ["console"]},
            },
        }

    def section(self, name: str) -> Dict:
        return self.config.get(name) or {}

    @property
    def seed(self) -> int:
        return self.section("integration").get("seed", DEFAULT_SEED)

    def initialize(self):
        """Initialize all system components."""
        logger.info("Initializing sumset squares components...")

        self.report_log = ReportLog(self.section("integration"))
        self.search_budget = SearchBudget.from_config(self.section("extremal_search"))
        self.orchestrator = SuiteOrchestrator(config=self.config, system=self)

        self.initialized = True
        logger.info("Sumset squares system initialized successfully")

    def _ensure_initialized(self):
        if not self.initialized:
            self.initialize()

    # Single operations

    def qr_table(self, q: int) -> QRProfile:
        return qr_profile(q)

    def verify_modular(
        self,
        q: int,
        cases: Optional[int] = None,
        seed: Optional[int] = None,
        tolerance: Optional[float] = None,
    ) -> List[VerificationReport]:
        """
        Randomized identity and inequality checks on Z/qZ.

        Every case draws a fresh pair of weights from one seeded generator.
        The Fourier representation and the lift identity are checked for
        every q; the mod-24 term, decomposition, off-diagonal bound and
        combined inequality only when 24 divides q.

        Args:
            q: Modulus
            cases: Number of weight pairs (config default)
            seed: Generator seed (config default)
            tolerance: Tolerance of the float identities (config default)

        Returns:
            All reports in case order, also recorded in the report log
        """
        self._ensure_initialized()
        cfg = self.section("modular_verifier")
        cases = cfg.get("cases", 100) if cases is None else cases
        seed = self.seed if seed is None else seed
        identity_tol = cfg.get("tolerance", 1e-9) if tolerance is None else tolerance
        inequality_tol = cfg.get("inequality_tolerance", DEFAULT_INEQUALITY_TOLERANCE)

        rng = np.random.default_rng(seed)
        reports = []
        for case in range(cases):
            wA, wB = random_weight(q, rng), random_weight(q, rng)
            batch = [
                fourier_identity_check(wA, wB, identity_tol),
                lift_identity_check(wA, wB, identity_tol),
            ]
            if q % 24 == 0:
                batch += [
                    mod24_term_check(wA, wB, identity_tol),
                    decomposition_check(wA, wB, identity_tol),
                    offdiagonal_bound_check(wA, wB, inequality_tol),
                    key_inequality_check(wA, wB, inequality_tol),
                ]
            for report in batch:
                report.seed = seed
                report.data["case"] = case
            reports.extend(batch)

        self.report_log.extend(reports)
        logger.info(f"verify-modular q={q}: {cases} cases, {len(reports)} reports")
        return reports

    def gauss_bounds(
        self, q_max: Optional[int] = None, tolerance: Optional[float] = None
    ) -> List[VerificationReport]:
        """gauss_bound_check for every multiple of 24 from 48 to q_max."""
        self._ensure_initialized()
        cfg = self.section("modular_verifier")
        q_max = cfg.get("gauss_q_max", 960) if q_max is None else q_max
        tol = cfg.get("tolerance", 1e-9) if tolerance is None else tolerance
        reports = [gauss_bound_check(q, tol) for q in range(48, q_max + 1, 24)]
        self.report_log.extend(reports)
        return reports

    def gauss_table(self, q_max: Optional[int] = None) -> List[Dict]:
        """Every (q, m) magnitude of the Gauss-bound sweep as flat rows."""
        q_max = self.section("modular_verifier").get("gauss_q_max", 960) if q_max is None else q_max
        rows = []
        for q in range(48, q_max + 1, 24):
            for entry in gauss_bound_report(q):
                rows.append(_gauss_row(q, entry))
        return rows

    def gauss_value_check(
        self, q: int = 48, m: int = 1, tolerance: float = 1e-9
    ) -> VerificationReport:
        """|f_q^(-m)| against sqrt(2/q) for a single frequency."""
        entry = next(e for e in gauss_bound_report(q) if e.m == m)
        return VerificationReport(
            lemma="gauss_value",
            kind=CheckKind.IDENTITY,
            lhs=entry.magnitude,
            rhs=math.sqrt(2 / q),
            tolerance=tolerance,
            q=q,
            data={"m": m},
        )

    def search(
        self,
        q: int,
        mode: SearchMode = SearchMode.AUTO,
        workers: Optional[int] = None,
    ) -> SearchWitness:
        self._ensure_initialized()
        workers = self.section("extremal_search").get("workers", 1) if workers is None else workers
        return max_bipartite_density(q, self.search_budget, mode, workers)

    def optimize(
        self,
        mode: EnumerationMode = EnumerationMode.EXACT,
        workers: Optional[int] = None,
        phi_constant=None,
        max_extra: Optional[int] = None,
    ) -> EnumerationResult:
        """
        Run the norm-bound enumeration.

        Args:
            mode: EXACT or FLOAT
            workers: Processes (config default)
            phi_constant: Replaces the constant term 16/3 of phi
            max_extra: Ones besides a(0); below 8 only part of the cases are scanned
        """
        cfg = self.section("optimization_verifier")
        workers = cfg.get("workers", 1) if workers is None else workers
        max_extra = cfg.get("max_extra", MAX_EXTRA_ONES) if max_extra is None else max_extra
        phi = None if phi_constant is None else PhiVector.build(constant=Fraction(phi_constant))
        return enumerate_norm_bound(mode=mode, workers=workers, phi=phi, max_extra=max_extra)

    def count(
        self, N: int, gen_a: SetGenerator, gen_b: SetGenerator, workers: Optional[int] = None
    ) -> int:
        workers = self.section("integer_lab").get("workers", 1) if workers is None else workers
        return count_square_pairs(gen_a.generate(N), gen_b.generate(N), workers=workers)

    def approximant(
        self,
        A: IntegerSet,
        params: ApproximantParams,
        beta_samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> List[VerificationReport]:
        """
        Mass identity and Fourier bound of the balanced function of A.

        beta = 0 is checked at every a/q with q | Q; the beta sweep draws
        ``beta_samples`` offsets log-uniformly from [1e-7, 1e-3] and pairs
        each with a random a/q.
        """
        self._ensure_initialized()
        cfg = self.section("integer_lab").get("approximant", {})
        beta_samples = cfg.get("beta_samples", 20) if beta_samples is None else beta_samples
        seed = self.seed if seed is None else seed
        rng = np.random.default_rng(seed)

        f = balanced_function(A, params)
        mass_ok = mass_identity_holds(A, f.weight)
        reports = [
            VerificationReport(
                lemma="approximant_mass",
                kind=CheckKind.IDENTITY,
                lhs=int(len(A)),
                rhs=f.weight.total_mass(),
                tolerance=0.0,
                q=params.Q,
                seed=seed,
                side_conditions={"cell_masses_match": mass_ok},
            )
        ]
        fractions = _rationals_dividing(params.Q)
        for a, q in fractions:
            reports.append(balanced_fourier_check(A, params, a, q, 0.0, balanced=f))
        for _ in range(beta_samples):
            a, q = fractions[int(rng.integers(len(fractions)))]
            beta = float(10 ** rng.uniform(-7, -3))
            reports.append(balanced_fourier_check(A, params, a, q, beta, balanced=f))
        for report in reports:
            report.seed = seed
        self.report_log.extend(reports)
        return reports

    def experiment(
        self,
        N: int,
        epsilon,
        gen_a: SetGenerator,
        gen_b: SetGenerator,
        waive_density: bool = False,
        workers: Optional[int] = None,
    ) -> ExperimentReport:
        workers = self.section("integer_lab").get("workers", 1) if workers is None else workers
        return main_experiment(
            N, epsilon, gen_a, gen_b, waive_density=waive_density, workers=workers
        )

    def sweep(
        self, N: int, epsilons: Sequence, seed: Optional[int] = None
    ) -> List[ExperimentReport]:
        return density_sweep(N, epsilons, self.seed if seed is None else seed)

    def audit(
        self,
        N: int,
        gen_a: SetGenerator,
        gen_b: SetGenerator,
        params: ApproximantParams,
        epsilon=None,
    ) -> AuditReport:
        return decomposition_audit(gen_a.generate(N), gen_b.generate(N), params, epsilon)

    def run_suite(
        self, phi_constant=None, tolerance: Optional[float] = None, seed: Optional[int] = None
    ):
        """Full acceptance suite; see SuiteOrchestrator.run."""
        self._ensure_initialized()
        return self.orchestrator.run(phi_constant=phi_constant, tolerance=tolerance, seed=seed)

    def get_system_status(self) -> Dict:
        """
        Get overall system status.

        Returns:
            Dictionary with status information
        """
        if not self.initialized:
            return {"status": "not_initialized"}

        return {
            "version": self.get_version(),
            "seed": self.seed,
            "search_budget": {
                "exhaustive_max_q": self.search_budget.exhaustive_max_q,
                "reduced_max_q": self.search_budget.reduced_max_q,
                "bnb_max_nodes": self.search_budget.bnb_max_nodes,
            },
            "reports": self.report_log.get_summary(),
        }

    def get_version(self) -> str:
        """Get system version."""
        return VERSION

    def __repr__(self) -> str:
        """String representation of the system."""
        status = "initialized" if self.initialized else "created"
        return f"SumsetSquaresSystem(status={status}, version={self.get_version()})"


def _rationals_dividing(Q: int) -> List[tuple]:
    """All (a, q) with q | Q and 1 <= a <= q coprime to q."""
    out = []
    for q in range(1, Q + 1):
        if Q % q:
            continue
        out.extend((a, q) for a in range(1, q + 1) if math.gcd(a, q) == 1)
    return out


def _gauss_row(q: int, entry: GaussBoundEntry) -> Dict:
    return {
        "q": q,
        "m": entry.m,
        "gcd": entry.g,
        "magnitude": entry.magnitude,
        "bound_class": entry.bound_class.value,
        "within_bound": entry.within_bound,
    }
