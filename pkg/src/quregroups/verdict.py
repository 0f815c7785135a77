"""Structured outcome of one claim-verification suite."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
REPORT_ONLY = "report-only"
STATUSES = (PASS, FAIL, REPORT_ONLY)


@dataclass
class ClaimVerdict:
    claim_id: str
    paper_ref: str
    status: str
    max_residual: float
    samples: int
    details: dict[str, Any] = field(default_factory=dict)
    tolerance: float | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == PASS and self.tolerance is not None and not self.max_residual <= self.tolerance:
            raise ValueError(f"{self.claim_id}: pass with residual {self.max_residual} > {self.tolerance}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.claim_id,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "max_residual": float(self.max_residual),
            "samples": int(self.samples),
            "details": self.details,
        }
