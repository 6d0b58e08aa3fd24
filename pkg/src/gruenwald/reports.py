"""Experiment configuration and convergence-report serialization.

Reports are deterministic: identical inputs produce byte-identical CSV and
JSON, with floats printed at 17 significant digits and fixed row order.
Verdicts are derived from the stored rows, never stored independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import DomainError
from .series import TruncationPolicy

TARGET_IDS = (
    "gaussian",
    "gaussian-times-x2",
    "recip-weight",
    "poisson-recip",
    "constant-one",
    "custom-samples",
)

EXPERIMENT_IDS = ("theorem1", "theorem2-sinh")


def fmt17(value: float) -> str:
    return "%.17g" % value


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one convergence experiment."""

    experiment: str
    nu: Optional[float]
    tau_ladder: Tuple[float, ...]
    grid_min: float
    grid_max: float
    grid_step: float
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)
    target: str = "gaussian"
    out: Optional[str] = None
    out_format: str = "csv"

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENT_IDS:
            raise DomainError(
                "unknown experiment %r; expected one of %s"
                % (self.experiment, ", ".join(EXPERIMENT_IDS))
            )
        ladder = tuple(float(t) for t in self.tau_ladder)
        if len(ladder) == 0:
            raise DomainError("tau ladder must be non-empty")
        if any(b <= a for a, b in zip(ladder, ladder[1:])):
            raise DomainError("tau ladder must be strictly increasing")
        if any(t <= 0.0 for t in ladder):
            raise DomainError("tau values must be positive")
        object.__setattr__(self, "tau_ladder", ladder)
        if not (self.grid_step > 0.0):
            raise DomainError("grid step must be positive")
        if not (self.grid_min <= self.grid_max):
            raise DomainError("grid min must not exceed grid max")
        if self.target not in TARGET_IDS:
            raise DomainError(
                "unknown target %r; expected one of %s"
                % (self.target, ", ".join(TARGET_IDS))
            )
        if self.out_format not in ("csv", "json"):
            raise DomainError("format must be 'csv' or 'json'")

    def as_meta(self) -> dict:
        return {
            "experiment": self.experiment,
            "nu": self.nu,
            "tau_ladder": list(self.tau_ladder),
            "grid_min": self.grid_min,
            "grid_max": self.grid_max,
            "grid_step": self.grid_step,
            "policy": {
                "radius": self.policy.radius,
                "tail_tolerance": self.policy.tail_tolerance,
                "min_nodes": self.policy.min_nodes,
            },
            "target": self.target,
            "format": self.out_format,
        }


@dataclass(frozen=True)
class ReportRow:
    tau: float
    sup_error: float
    argmax: float
    nodes_used: int
    tail_estimate: float


@dataclass(frozen=True)
class ConvergenceReport:
    """Rows of per-tau sup errors plus the configuration echo.

    family_id is set for de Branges family experiments and adds a CSV
    column; note carries a hypothesis-failure diagnostic when a run was
    aborted (such a report fails its verdict).
    """

    experiment: str
    nu: Optional[float]
    target: str
    grid_min: float
    grid_max: float
    grid_step: float
    tail_tolerance: float
    rows: Tuple[ReportRow, ...]
    family_id: Optional[str] = None
    note: str = ""

    def __post_init__(self) -> None:
        taus = [r.tau for r in self.rows]
        if any(b <= a for a, b in zip(taus, taus[1:])):
            raise DomainError("report rows must be ordered by increasing tau")

    def sup_errors(self):
        return [r.sup_error for r in self.rows]

    def strictly_decreasing(self) -> bool:
        sups = self.sup_errors()
        return len(sups) >= 2 and all(b < a for a, b in zip(sups, sups[1:]))

    def expected_failure_holds(self) -> bool:
        """The negative-control rule: the error never decays below half its
        first-ladder value."""
        sups = self.sup_errors()
        return len(sups) >= 2 and sups[-1] >= 0.5 * sups[0]

    def verdict_rule(self) -> str:
        if self.target == "recip-weight":
            return "expected-failure"
        return "decreasing"

    def verdicts(self) -> dict:
        rule = self.verdict_rule()
        if self.note:
            passed = False
        elif rule == "expected-failure":
            passed = self.expected_failure_holds()
        else:
            passed = self.strictly_decreasing()
        return {"rule": rule, "pass": passed}

    def to_csv(self) -> str:
        header = [
            "nu",
            "tau",
            "grid_min",
            "grid_max",
            "grid_step",
            "sup_error",
            "argmax",
            "tail_tolerance",
            "nodes_used",
        ]
        if self.family_id is not None:
            header.append("family_id")
        lines = [",".join(header)]
        nu_text = "" if self.nu is None else fmt17(self.nu)
        for r in self.rows:
            cells = [
                nu_text,
                fmt17(r.tau),
                fmt17(self.grid_min),
                fmt17(self.grid_max),
                fmt17(self.grid_step),
                fmt17(r.sup_error),
                fmt17(r.argmax),
                fmt17(self.tail_tolerance),
                "%d" % r.nodes_used,
            ]
            if self.family_id is not None:
                cells.append(self.family_id)
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "schema": 1,
            "experiment": self.experiment,
            "nu": self.nu,
            "target": self.target,
            "grid": {
                "min": self.grid_min,
                "max": self.grid_max,
                "step": self.grid_step,
            },
            "tail_tolerance": self.tail_tolerance,
            "family_id": self.family_id,
            "note": self.note,
            "rows": [
                {
                    "tau": r.tau,
                    "sup_error": r.sup_error,
                    "argmax": r.argmax,
                    "nodes_used": r.nodes_used,
                    "tail_estimate": r.tail_estimate,
                }
                for r in self.rows
            ],
            "verdicts": self.verdicts(),
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def serialize(self, out_format: str) -> str:
        if out_format == "csv":
            return self.to_csv()
        if out_format == "json":
            return self.to_json()
        raise DomainError("format must be 'csv' or 'json'")


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
