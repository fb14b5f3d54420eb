"""
Command-line entry point.

    sumset-squares <subcommand> [options]

Every run builds a validated RunConfig, dispatches to the toolkit, embeds
the config in its report and writes the report atomically. Exit status is
0 when every check passes, 1 when a check fails and 2 on a usage error.
"""

import argparse
import json
import logging
import logging.config
import os
import sys
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.ring_core.errors import SearchBudgetExceeded, SumsetSquaresError
from src.modular_verifier import ReportLog, VerificationReport
from src.extremal_search import SearchMode
from src.optimization_verifier import EnumerationMode
from src.integer_lab import (
    ApproximantParams,
    GeneratorKind,
    SetGenerator,
    count_square_pairs,
    count_square_pairs_naive,
)
from src.integration.system import DEFAULT_SEED, SumsetSquaresSystem

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV_VAR = "SUMSET_SQUARES_OUTPUT_DIR"

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

DEFAULT_EPSILON = "1/16"
EXTREMAL_RESIDUES = {"a": [0, 1, 5], "b": [2, 5, 6]}


class Subcommand(str, Enum):
    QR_TABLE = "qr-table"
    VERIFY_MODULAR = "verify-modular"
    GAUSS_BOUNDS = "gauss-bounds"
    SEARCH = "search"
    OPTIMIZE = "optimize"
    COUNT = "count"
    APPROXIMANT = "approximant"
    EXPERIMENT = "experiment"
    AUDIT = "audit"
    SUITE = "suite"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


NEEDS_Q = {Subcommand.QR_TABLE, Subcommand.VERIFY_MODULAR, Subcommand.SEARCH}
NEEDS_N = {Subcommand.COUNT, Subcommand.APPROXIMANT, Subcommand.EXPERIMENT, Subcommand.AUDIT}
NEEDS_PARAMS = {Subcommand.APPROXIMANT, Subcommand.AUDIT}
TABULAR = {Subcommand.QR_TABLE, Subcommand.GAUSS_BOUNDS}


def _parse_rational(value: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {value!r}") from None


class SetSpec(BaseModel):
    """Recipe for one integer set on the command line."""

    model_config = ConfigDict(extra="forbid")

    kind: GeneratorKind = GeneratorKind.BOOSTED_LIFT
    residues: List[int] = Field(default_factory=list)
    modulus: int = Field(8, ge=1)
    density: Optional[str] = None
    path: Optional[str] = None
    seed: Optional[int] = None

    @field_validator("density")
    @classmethod
    def _density_is_rational(cls, v):
        if v is not None and not 0 <= _parse_rational(v) <= 1:
            raise ValueError("density must lie in [0, 1]")
        return v

    @model_validator(mode="after")
    def _kind_has_inputs(self):
        if self.kind is GeneratorKind.FILE:
            if not self.path:
                raise ValueError("file sets need a path")
            if not Path(self.path).is_file():
                raise ValueError(f"set file not found: {self.path}")
        return self

    def to_generator(self, default_density: Fraction, default_seed: int) -> SetGenerator:
        density = _parse_rational(self.density) if self.density is not None else default_density
        seed = default_seed if self.seed is None else self.seed
        params: Dict[str, Any] = {}
        if self.kind in (GeneratorKind.RESIDUE_LIFT, GeneratorKind.BOOSTED_LIFT):
            params.update(residues=list(self.residues), modulus=self.modulus)
        if self.kind in (GeneratorKind.BOOSTED_LIFT, GeneratorKind.UNIFORM):
            params["density"] = density
        if self.kind is GeneratorKind.FILE:
            params["path"] = self.path
        return SetGenerator(self.kind, params, seed=seed)


class RunConfig(BaseModel):
    """
    Validated configuration of one CLI run.

    Flag combinations are checked here; a ValidationError is a usage error.
    """

    model_config = ConfigDict(extra="forbid")

    subcommand: Subcommand
    seed: int = Field(DEFAULT_SEED, ge=0, lt=2 ** 64)
    tolerance: Optional[float] = Field(None, ge=0)
    output_path: Optional[str] = None
    format: OutputFormat = OutputFormat.JSON
    config_path: Optional[str] = None

    q: Optional[int] = Field(None, ge=1)
    cases: Optional[int] = Field(None, ge=1)
    q_max: Optional[int] = Field(None, ge=48)
    mode: Optional[str] = None
    workers: Optional[int] = Field(None, ge=1)
    phi_constant: Optional[str] = None

    N: Optional[int] = Field(None, ge=1)
    epsilon: str = DEFAULT_EPSILON
    Q: Optional[int] = Field(None, ge=1)
    qbar: Optional[int] = Field(None, ge=1)
    K: Optional[int] = Field(None, ge=1)
    beta_samples: Optional[int] = Field(None, ge=0)
    oracle: bool = False
    sweep: Optional[List[str]] = None
    waive_density: bool = False
    set_a: SetSpec = Field(default_factory=lambda: SetSpec(residues=EXTREMAL_RESIDUES["a"]))
    set_b: SetSpec = Field(default_factory=lambda: SetSpec(residues=EXTREMAL_RESIDUES["b"]))

    @field_validator("epsilon", "phi_constant")
    @classmethod
    def _rational(cls, v):
        if v is not None:
            _parse_rational(v)
        return v

    @field_validator("sweep")
    @classmethod
    def _rational_list(cls, v):
        for item in v or []:
            _parse_rational(item)
        return v

    @model_validator(mode="after")
    def _flag_combinations(self):
        cmd = self.subcommand
        if cmd in NEEDS_Q and self.q is None:
            raise ValueError(f"{cmd.value} needs --q")
        if cmd in NEEDS_N and self.N is None:
            raise ValueError(f"{cmd.value} needs --N")
        if self.format is OutputFormat.CSV and not (
            cmd in TABULAR or (cmd is Subcommand.EXPERIMENT and self.sweep)
        ):
            raise ValueError(
                "csv output is only available for qr-table, gauss-bounds and experiment --sweep"
            )
        if self.mode is not None:
            allowed = {
                Subcommand.OPTIMIZE: [m.value for m in EnumerationMode],
                Subcommand.SEARCH: [m.value for m in SearchMode],
            }.get(cmd)
            if allowed is None or self.mode not in allowed:
                raise ValueError(f"--mode {self.mode} is not valid for {cmd.value}")
        if self.phi_constant is not None and cmd not in (Subcommand.OPTIMIZE, Subcommand.SUITE):
            raise ValueError("--phi-constant applies to optimize and suite only")
        if cmd in NEEDS_PARAMS:
            if (self.Q is None) == (self.qbar is None):
                raise ValueError(f"{cmd.value} needs exactly one of --Q and --qbar")
            if self.K is None:
                raise ValueError(f"{cmd.value} needs --K")
        if self.sweep and cmd is not Subcommand.EXPERIMENT:
            raise ValueError("--sweep applies to experiment only")
        return self

    @property
    def epsilon_value(self) -> Fraction:
        return _parse_rational(self.epsilon)

    def approximant_params(self) -> ApproximantParams:
        if self.qbar is not None:
            return ApproximantParams.from_qbar(self.qbar, self.K)
        return ApproximantParams(Q=self.Q, K=self.K)

    def generators(self):
        density = Fraction(3, 8) + self.epsilon_value
        return (
            self.set_a.to_generator(density, self.seed),
            self.set_b.to_generator(density, self.seed + 1),
        )


@dataclass
class Outcome:
    """Result of one subcommand before rendering."""
    passed: bool
    result: Dict[str, Any]
    rows: Optional[List[Dict[str, Any]]] = None
    summary: List[str] = field(default_factory=list)


def _report_outcome(reports: List[VerificationReport], **extra) -> Outcome:
    log = ReportLog({"log_failures": False})
    log.extend(reports)
    summary = log.get_summary()
    result = {
        "summary": summary,
        "failures": [r.to_dict() for r in log.get_failures()],
        "reports": [r.to_dict() for r in reports],
        **extra,
    }
    lines = [f"{summary['total']} checks, {summary['failed']} failed"]
    for lemma, e in summary["by_lemma"].items():
        lines.append(f"  {lemma}: {e['total'] - e['failed']}/{e['total']}")
    return Outcome(passed=log.all_passed, result=result, summary=lines)


def _qr_table(cfg: RunConfig, system: SumsetSquaresSystem) -> Outcome:
    profile = system.qr_table(cfg.q)
    rows = [{"t": t, "count": c, "square": c > 0} for t, c in enumerate(profile.counts)]
    return Outcome(
        passed=profile.total() == cfg.q,
        result={
            "q": cfg.q,
            "counts": list(profile.counts),
            "support": list(profile.support()),
            "total": profile.total(),
        },
        rows=rows,
        summary=[f"q={cfg.q}: {len(profile.support())} squares, total mass {profile.total()}"],
    )


def _verify_modular(cfg: RunConfig, system: SumsetSquaresSystem) -> Outcome:
    reports = system.verify_modular(cfg.q, cfg.cases, cfg.seed, cfg.tolerance)
    return _report_outcome(reports, q=cfg.q)


def _gauss_bounds(cfg: RunConfig, system: SumsetSquaresSystem) -> Outcome:
    reports = system.gauss_bounds(cfg.q_max, cfg.tolerance)
    reports.append(system.gauss_value_check(48, 1))
    outcome = _report_outcome(reports)
    outcome.rows = system.gauss_table(cfg.q_max)
    return outcome


def _search(cfg: RunConfig, system: SumsetSquaresSystem) -> Outcome:
    mode = SearchMode(cfg.mode) if cfg.mode else SearchMode.AUTO
    try:
        witness = system.search(cfg.q, mode, cfg.workers)
    except SearchBudgetExceeded as e:
        logger.warning(f"search at q={cfg.q} not finished: {e}")
        best = e.best
        return Outcome(
            passed=False,
            result={
                "witness": None if best is None else best.to_dict(),
                "mode": mode.value,
                "optimal": False,
                "budget_exceeded": True,
                "reason": str(e),
            },
            summary=[
                f"q={cfg.q}: budget exceeded ({e})",
                "no witness" if best is None else f"best objective so far {best.objective}",
            ],
        )
    return Outcome(
        passed=witness.certified,
        result={
            "witness": witness.to_dict(),
            "mode": mode.value,
            "optimal": witness.optimal,
            "budget_exceeded": False,
        },
        summary=[
            f"q={cfg.q}: objective {witness.objective}, "
            f"A={witness.A.elements()}, B={witness.B.elements()}"
        ],
    )


def _optimize(cfg: RunConfig, system: SumsetSquaresSystem) -> Outcome:
    mode = EnumerationMode(cfg.mode) if cfg.mode else EnumerationMode.EXACT
    phi_constant = None if cfg.phi_constant is None else _parse_rational(cfg.phi_constant)
    result = system.optimize(mode, cfg.workers, phi_constant)
    return Outcome(
        passed=result.bound_holds,
        result=result.to_dict(),
        summary=[
            f"{result.case_count} cases ({mode.value})",
            f"max h(a, phi) = {result.max_phi}, max h(a, phi~) = {result.max_phi_tilde}",
            f"{len(result.extremizers_phi)}+{len(result.extremizers_tilde)} extremizers",
        ],
    )


def _count(cfg: RunConfig, system: SumsetSquaresSystem) -> Outcome:
    gen_a, gen_b = cfg.generators()
    A, B = gen_a.generate(cfg.N), gen_b.generate(cfg.N)
    count = count_square_pairs(A, B, workers=cfg.workers or 1)
    result = {
        "N": cfg.N,
        "count": count,
        "sizes": {"A": len(A), "B": len(B)},
        "sets": {"A": gen_a.to_dict(), "B": gen_b.to_dict()},
    }
    passed = True
    if cfg.oracle:
        naive = count_square_pairs_naive(A, B)
        result["naive_count"] = naive
        passed = naive == count
    return Outcome(passed=passed, result=result, summary=[f"N={cfg.N}: {count} square pairs"])


def _approximant(cfg: RunConfig, system: SumsetSquaresSystem) -> Outcome:
    params = cfg.approximant_params()
    gen_a, _ = cfg.generators()
    A = gen_a.generate(cfg.N)
    reports = system.approximant(A, params, cfg.beta_samples, cfg.seed)
    return _report_outcome(reports, params=params.to_dict(), set=gen_a.to_dict())


def _experiment(cfg: RunConfig, system: SumsetSquaresSystem) -> Outcome:
    if cfg.sweep:
        reports = system.sweep(cfg.N, [_parse_rational(e) for e in cfg.sweep], cfg.seed)
        rows = [
            {
                "epsilon": str(r.epsilon),
                "count": r.count,
                "bound": r.bound,
                "margin": r.margin,
                "density_A": r.densities["A"],
                "density_B": r.densities["B"],
                "pass": r.passed,
            }
            for r in reports
        ]
        return Outcome(
            passed=all(r.passed for r in reports),
            result={"N": cfg.N, "sweep": [r.to_dict() for r in reports]},
            rows=rows,
            summary=[
                f"eps={row['epsilon']}: {row['count']} pairs (bound {row['bound']:.4g})"
                for row in rows
            ],
        )
    gen_a, gen_b = cfg.generators()
    report = system.experiment(
        cfg.N, cfg.epsilon_value, gen_a, gen_b, cfg.waive_density, cfg.workers
    )
    return Outcome(
        passed=report.passed,
        result=report.to_dict(),
        summary=[
            f"N={cfg.N}: {report.count} square pairs, "
            f"bound {report.bound:.4g}, margin {report.margin}"
        ],
    )


def _audit(cfg: RunConfig, system: SumsetSquaresSystem) -> Outcome:
    gen_a, gen_b = cfg.generators()
    report = system.audit(cfg.N, gen_a, gen_b, cfg.approximant_params(), cfg.epsilon_value)
    return Outcome(
        passed=report.passed,
        result=report.to_dict(),
        summary=[
            f"N={cfg.N}: count {report.count}, relative error {report.relative_error:.2e}",
            f"bounds met: {report.bound_status()}",
            report.caveat,
        ],
    )


def _suite(cfg: RunConfig, system: SumsetSquaresSystem) -> Outcome:
    phi_constant = None if cfg.phi_constant is None else _parse_rational(cfg.phi_constant)
    result = system.run_suite(phi_constant=phi_constant, tolerance=cfg.tolerance, seed=cfg.seed)
    data = result.to_dict()
    lines = [
        f"{name}: {s['total'] - s['failed']}/{s['total']}" for name, s in data["stages"].items()
    ]
    return Outcome(passed=result.passed, result=data, summary=lines)


HANDLERS: Dict[Subcommand, Callable[[RunConfig, SumsetSquaresSystem], Outcome]] = {
    Subcommand.QR_TABLE: _qr_table,
    Subcommand.VERIFY_MODULAR: _verify_modular,
    Subcommand.GAUSS_BOUNDS: _gauss_bounds,
    Subcommand.SEARCH: _search,
    Subcommand.OPTIMIZE: _optimize,
    Subcommand.COUNT: _count,
    Subcommand.APPROXIMANT: _approximant,
    Subcommand.EXPERIMENT: _experiment,
    Subcommand.AUDIT: _audit,
    Subcommand.SUITE: _suite,
}


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (Fraction, Path, Enum)):
        return str(obj.value if isinstance(obj, Enum) else obj)
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def build_document(cfg: RunConfig, outcome: Outcome, version: str) -> Dict[str, Any]:
    """Report document; everything outside ``metadata`` depends only on the config."""
    return {
        "command": cfg.subcommand.value,
        "config": cfg.model_dump(mode="json"),
        "pass": outcome.passed,
        "result": outcome.result,
        "metadata": {
            "version": version,
            "generated_at": datetime.now(timezone.utc).isoformat(),
        },
    }


def render(cfg: RunConfig, outcome: Outcome, version: str) -> str:
    document = build_document(cfg, outcome, version)
    if cfg.format is OutputFormat.JSON:
        return json.dumps(document, sort_keys=True, indent=2, default=_json_default) + "\n"

    config_line = json.dumps(document["config"], sort_keys=True, default=_json_default)
    if cfg.format is OutputFormat.CSV:
        frame = pd.DataFrame(outcome.rows or [])
        return f"# config: {config_line}\n" + frame.to_csv(index=False)

    status = "PASS" if outcome.passed else "FAIL"
    lines = [f"{cfg.subcommand.value}: {status}", f"config: {config_line}"]
    lines += outcome.summary
    return "\n".join(lines) + "\n"


def resolve_output_path(cfg: RunConfig) -> Optional[Path]:
    """Explicit path, else $SUMSET_SQUARES_OUTPUT_DIR/<subcommand>.<format>, else stdout (None)."""
    if cfg.output_path:
        return Path(cfg.output_path)
    directory = os.environ.get(OUTPUT_DIR_ENV_VAR)
    if directory:
        return Path(directory) / f"{cfg.subcommand.value}.{cfg.format.value}"
    return None


def write_atomic(text: str, path: Path) -> None:
    """Write through a temporary file in the target directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.info(f"Report written to {path}")


def configure_logging(config: Dict, verbosity: int = 0) -> None:
    """Apply the ``logging`` section with dictConfig; -v lowers the root level."""
    section = config.get("logging")
    if section:
        logging.config.dictConfig(section)
    else:
        logging.basicConfig(stream=sys.stderr, level=logging.INFO)
    if verbosity:
        logging.getLogger().setLevel(logging.DEBUG)


def _add_set_flags(parser: argparse.ArgumentParser, label: str) -> None:
    parser.add_argument(f"--{label}-kind", choices=[k.value for k in GeneratorKind], default=None)
    parser.add_argument(f"--{label}-residues", default=None, help="comma-separated residues")
    parser.add_argument(f"--{label}-modulus", type=int, default=None)
    parser.add_argument(f"--{label}-density", default=None, help="rational, e.g. 7/16")
    parser.add_argument(f"--{label}-file", default=None, help="newline-delimited integers")
    parser.add_argument(f"--{label}-seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", dest="config_path", default=None, help="YAML config file")
    common.add_argument("--seed", type=int, default=None, help=f"default {DEFAULT_SEED}")
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--out", "-o", dest="output_path", default=None)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default="json")
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="sumset-squares", description=__doc__.strip().splitlines()[0]
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("qr-table", parents=[common], help="square counts mod q")
    p.add_argument("--q", type=int)

    p = sub.add_parser("verify-modular", parents=[common], help="randomized identities on Z/qZ")
    p.add_argument("--q", type=int)
    p.add_argument("--cases", type=int, default=None)

    p = sub.add_parser("gauss-bounds", parents=[common], help="Gauss-sum magnitudes up to q-max")
    p.add_argument("--q-max", type=int, default=None)

    p = sub.add_parser("search", parents=[common], help="extremal square-avoiding pairs mod q")
    p.add_argument("--q", type=int)
    strategy = p.add_mutually_exclusive_group()
    strategy.add_argument("--mode", choices=[m.value for m in SearchMode], default=None)
    strategy.add_argument(
        "--exhaustive", dest="mode", action="store_const", const=SearchMode.EXHAUSTIVE.value
    )
    strategy.add_argument(
        "--reduced", dest="mode", action="store_const", const=SearchMode.REDUCED.value
    )

    p = sub.add_parser("optimize", parents=[common], help="norm-bound enumeration on Z/24Z")
    p.add_argument("--mode", choices=[m.value for m in EnumerationMode], default=None)
    p.add_argument("--phi-constant", default=None)

    for name, text in (
        ("count", "square pairs of two sets in [1, N]"),
        ("approximant", "balanced-function Fourier checks"),
        ("experiment", "square pairs against the density bound"),
        ("audit", "main/error decomposition of the count"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--N", type=int)
        p.add_argument("--epsilon", default=DEFAULT_EPSILON)
        _add_set_flags(p, "a")
        if name != "approximant":
            _add_set_flags(p, "b")
        if name in ("approximant", "audit"):
            p.add_argument("--Q", type=int, default=None)
            p.add_argument("--qbar", type=int, default=None)
            p.add_argument("--K", type=int, default=None)
        if name == "approximant":
            p.add_argument("--beta-samples", type=int, default=None)
        if name == "count":
            p.add_argument("--oracle", action="store_true", help="also run the double loop")
        if name == "experiment":
            p.add_argument("--sweep", nargs="+", default=None, help="epsilons for a density sweep")
            p.add_argument("--waive-density", action="store_true")

    p = sub.add_parser("suite", parents=[common], help="full acceptance suite")
    p.add_argument("--phi-constant", default=None)
    return parser


def _set_spec(args: argparse.Namespace, label: str) -> Optional[Dict[str, Any]]:
    if not hasattr(args, f"{label}_kind"):
        return None
    spec: Dict[str, Any] = {"residues": EXTREMAL_RESIDUES[label]}
    kind = getattr(args, f"{label}_kind")
    if kind:
        spec["kind"] = kind
    residues = getattr(args, f"{label}_residues")
    if residues:
        spec["residues"] = [int(r) for r in residues.split(",") if r.strip()]
    for key in ("modulus", "density", "seed"):
        value = getattr(args, f"{label}_{key}")
        if value is not None:
            spec[key] = value
    path = getattr(args, f"{label}_file")
    if path:
        spec["path"] = path
        spec.setdefault("kind", GeneratorKind.FILE.value)
    return spec


def build_config(args: argparse.Namespace) -> RunConfig:
    """
    Raises:
        ValidationError: invalid values or flag combinations
    """
    fields = {
        "subcommand": args.subcommand,
        "tolerance": args.tolerance,
        "output_path": args.output_path,
        "format": args.format,
        "config_path": args.config_path,
        "workers": args.workers,
    }
    for name in (
        "seed", "q", "cases", "q_max", "mode", "phi_constant",
        "N", "epsilon", "Q", "qbar", "K", "beta_samples", "sweep",
    ):
        value = getattr(args, name, None)
        if value is not None:
            fields[name] = value
    for flag in ("oracle", "waive_density"):
        if getattr(args, flag, False):
            fields[flag] = True
    for label in ("a", "b"):
        spec = _set_spec(args, label)
        if spec is not None:
            fields[f"set_{label}"] = spec
    return RunConfig(**fields)


def run(cfg: RunConfig, system: Optional[SumsetSquaresSystem] = None) -> int:
    """
    Dispatch one validated config and write its report.

    Returns:
        Exit status: 0 pass, 1 check failure, 2 usage error
    """
    system = system or SumsetSquaresSystem(cfg.config_path)
    try:
        outcome = HANDLERS[cfg.subcommand](cfg, system)
    except (SumsetSquaresError, FileNotFoundError) as e:
        logger.error(f"{cfg.subcommand.value} rejected its input: {e}")
        return EXIT_USAGE

    text = render(cfg, outcome, system.get_version())
    target = resolve_output_path(cfg)
    if target is None:
        sys.stdout.write(text)
    else:
        write_atomic(text, target)

    if not outcome.passed:
        logger.warning(f"{cfg.subcommand.value}: at least one check failed")
        return EXIT_CHECK_FAILED
    return EXIT_PASS


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS

    try:
        cfg = build_config(args)
    except ValidationError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"sumset-squares: invalid configuration:\n{e}\n")
        return EXIT_USAGE

    system = SumsetSquaresSystem(cfg.config_path)
    configure_logging(system.config, args.verbose)
    return run(cfg, system)


if __name__ == "__main__":
    sys.exit(main())
