"""Claim-verification harness: suite registry, runner and report formats."""

from quregroups.verify.report import RunConfig, RunReport, run
from quregroups.verify.suites import SUITES, list_claims

__all__ = ["RunConfig", "RunReport", "SUITES", "list_claims", "run"]
