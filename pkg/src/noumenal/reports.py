"""Report types for law checks and scripted demonstrations.

Reports are value objects with a stable JSON form; rendering them with the
same inputs twice produces byte-identical output, which the command-line
front end relies on for reproducibility checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class LawReport:
    """Outcome of randomized trials of one algebraic law.

    ``passed`` is ``None`` when no trials ran (reported as "skipped").
    ``counterexample`` holds the serialized inputs of the worst failing
    trial, when there is one.
    """

    law_id: str
    description: str
    trials: int
    max_residual: float | None
    passed: bool | None
    seed: int
    counterexample: dict | None = None

    @property
    def status(self) -> str:
        if self.passed is None:
            return "skipped"
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        payload = {
            "law_id": self.law_id,
            "description": self.description,
            "trials": self.trials,
            "max_residual": self.max_residual,
            "status": self.status,
            "seed": self.seed,
        }
        if self.counterexample is not None:
            payload["counterexample"] = self.counterexample
        return payload

    @classmethod
    def from_json(cls, payload: dict) -> "LawReport":
        status = payload["status"]
        return cls(
            law_id=payload["law_id"],
            description=payload["description"],
            trials=payload["trials"],
            max_residual=payload["max_residual"],
            passed=None if status == "skipped" else status == "pass",
            seed=payload["seed"],
            counterexample=payload.get("counterexample"),
        )


@dataclass
class ScenarioResult:
    """Outcome of one scripted demonstration.

    ``findings`` maps names to JSON-ready values (matrices, verdict booleans,
    margins); ``summary`` holds human-oriented lines, one per key step.
    """

    scenario_id: str
    findings: dict
    summary: list[str] = field(default_factory=list)
    passed: bool = True

    def to_json(self) -> dict:
        return {
            "scenario_id": self.scenario_id,
            "passed": self.passed,
            "findings": self.findings,
            "summary": self.summary,
        }

    @classmethod
    def from_json(cls, payload: dict) -> "ScenarioResult":
        return cls(
            scenario_id=payload["scenario_id"],
            findings=payload["findings"],
            summary=list(payload["summary"]),
            passed=payload["passed"],
        )


def render_law_table(reports: list[LawReport]) -> str:
    """Aligned-column text rendering of a batch of law reports."""
    rows = [("LAW", "STATUS", "TRIALS", "MAX RESIDUAL")]
    for report in reports:
        residual = "-" if report.max_residual is None else f"{report.max_residual:.3e}"
        rows.append((report.law_id, report.status, str(report.trials), residual))
    widths = [max(len(row[col]) for row in rows) for col in range(4)]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() for row in rows]
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for report in reports:
        counts[report.status] += 1
    lines.append("")
    lines.append(
        f"{len(reports)} laws: {counts['pass']} passed, {counts['fail']} failed, "
        f"{counts['skipped']} skipped"
    )
    return "\n".join(lines)


def render_scenario(result: ScenarioResult) -> str:
    lines = [f"scenario: {result.scenario_id}"]
    lines.extend(f"  {line}" for line in result.summary)
    lines.append(f"  verdict: {'PASS' if result.passed else 'FAIL'}")
    return "\n".join(lines)
