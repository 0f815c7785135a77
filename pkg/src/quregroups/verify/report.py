"""Run configuration, suite execution and report serialisation."""

from __future__ import annotations

import csv
import io
import json
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from quregroups.verdict import FAIL, PASS, REPORT_ONLY, ClaimVerdict
from quregroups.verify.suites import SUITES, SUITES_BY_ID, SuiteContext

DEFAULT_SEED = 20151117
FORMATS = ("text", "json", "csv")

REPORT_SCHEMA = {
    "type": "object",
    "required": ["config", "claims", "summary"],
    "additionalProperties": False,
    "properties": {
        "config": {
            "type": "object",
            "required": ["suites", "tolerance", "seed", "samples", "n_max", "format"],
            "properties": {
                "suites": {"type": "array", "items": {"type": "string"}},
                "tolerance": {"type": "number", "exclusiveMinimum": 0},
                "seed": {"type": "integer", "minimum": 0},
                "samples": {"type": "integer", "minimum": 1},
                "n_max": {"type": "integer", "minimum": 2, "maximum": 4},
                "format": {"enum": list(FORMATS)},
            },
        },
        "claims": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "paper_ref", "status", "max_residual", "samples", "details"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "paper_ref": {"type": "string"},
                    "status": {"enum": [PASS, FAIL, REPORT_ONLY]},
                    "max_residual": {"type": "number", "minimum": 0},
                    "samples": {"type": "integer", "minimum": 0},
                    "details": {"type": "object"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": [PASS, FAIL, REPORT_ONLY],
            "properties": {k: {"type": "integer", "minimum": 0} for k in (PASS, FAIL, REPORT_ONLY)},
        },
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}


class UnknownSuiteError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    suites: tuple[str, ...] = ("all",)
    tolerance: float = 1e-9
    seed: int = DEFAULT_SEED
    samples: int = 10_000
    n_max: int = 4
    format: str = "text"
    out: str | None = None
    jobs: int = 1
    timings: bool = False

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not 2 <= self.n_max <= 4:
            raise ValueError("n_max must lie in 2..4")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    def selected(self) -> list[str]:
        if "all" in self.suites:
            return [s.id for s in SUITES]
        unknown = [s for s in self.suites if s not in SUITES_BY_ID]
        if unknown:
            raise UnknownSuiteError(f"unknown suite id(s): {', '.join(unknown)}")
        wanted = set(self.suites)
        return [s.id for s in SUITES if s.id in wanted]

    def echo(self) -> dict:
        return {
            "suites": self.selected(),
            "tolerance": self.tolerance,
            "seed": self.seed,
            "samples": self.samples,
            "n_max": self.n_max,
            "format": self.format,
        }


@dataclass
class RunReport:
    config: RunConfig
    verdicts: list[ClaimVerdict]
    timings: dict[str, float] = field(default_factory=dict)

    def summary(self) -> dict[str, int]:
        counts = {PASS: 0, FAIL: 0, REPORT_ONLY: 0}
        for v in self.verdicts:
            counts[v.status] += 1
        return counts

    @property
    def exit_code(self) -> int:
        asserted_failure = any(v.status == FAIL and SUITES_BY_ID[v.claim_id].asserted for v in self.verdicts)
        return 1 if asserted_failure else 0

    def to_dict(self) -> dict:
        out = {
            "config": self.config.echo(),
            "claims": [v.to_dict() for v in self.verdicts],
            "summary": self.summary(),
        }
        if self.config.timings:
            out["timings"] = self.timings
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "paper_ref", "status", "max_residual", "samples", "details"])
        for v in self.verdicts:
            d = v.to_dict()
            writer.writerow([d["id"], d["paper_ref"], d["status"], repr(d["max_residual"]), d["samples"],
                             json.dumps(d["details"], separators=(",", ":"))])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"seed={self.config.seed} samples={self.config.samples} tolerance={self.config.tolerance:g} "
                 f"n_max={self.config.n_max}"]
        for v in self.verdicts:
            suite = SUITES_BY_ID[v.claim_id]
            line = f"{v.claim_id:<4} {v.status:<12} max_residual={v.max_residual:.3e}  {suite.title}"
            if self.config.timings:
                line += f"  ({self.timings[v.claim_id]:.3f}s)"
            lines.append(line)
            if v.status == FAIL:
                for name, item in v.details.get("checks", {}).items():
                    if not item["ok"]:
                        lines.append(f"       failed: {name} {item}")
        s = self.summary()
        lines.append(f"pass={s[PASS]} fail={s[FAIL]} report-only={s[REPORT_ONLY]}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[self.config.format]()


def suite_rng(seed: int, suite_id: str) -> np.random.Generator:
    """Independent stream per (seed, suite), so results do not depend on which suites run or in what order."""
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(suite_id.encode())]))


def _run_one(config: RunConfig, suite_id: str) -> tuple[ClaimVerdict, float]:
    ctx = SuiteContext(suite_rng(config.seed, suite_id), config.samples, config.tolerance, config.n_max)
    start = time.perf_counter()
    verdict = SUITES_BY_ID[suite_id].func(ctx)
    return verdict, time.perf_counter() - start


def run(config: RunConfig) -> RunReport:
    ids = config.selected()
    if config.jobs > 1:
        with ThreadPoolExecutor(config.jobs) as pool:
            results = list(pool.map(lambda sid: _run_one(config, sid), ids))
    else:
        results = [_run_one(config, sid) for sid in ids]
    return RunReport(config, [v for v, _ in results], {sid: t for sid, (_, t) in zip(ids, results)})
