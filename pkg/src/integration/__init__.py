"""
Integration - configuration, suite and command line

Ties the verification packages together behind one system object, runs the
acceptance suite and exposes everything through the sumset-squares command.
"""

from src.integration.system import SumsetSquaresSystem
from src.integration.orchestrator import SuiteOrchestrator, SuiteResult
from src.integration.cli import RunConfig, main, run

__all__ = [
    "SumsetSquaresSystem",
    "SuiteOrchestrator",
    "SuiteResult",
    "RunConfig",
    "main",
    "run",
]
