"""Verification reports: checks, skips, findings and their serializations."""

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any

from . import __version__
from .linalg import PhiSpec
from .utils import format_json_output


def render_value(value: Any) -> str:
    """Render a predicted or computed value; integers become decimal strings."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, PhiSpec):
        return f"Phi({value.nu},{value.alpha},{value.beta})"
    if value is None:
        return "none"
    return str(value)


@dataclass(frozen=True)
class CheckResult:
    name: str
    predicted: str
    computed: str
    passed: bool
    ms: int = 0

    @classmethod
    def compare(cls, name: str, predicted: Any, computed: Any, ms: int = 0,
                passed: bool | None = None) -> "CheckResult":
        """Build a check; it passes when the values are equal unless `passed` is given."""
        if passed is None:
            passed = predicted == computed
        return cls(name, render_value(predicted), render_value(computed), passed, ms)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "predicted": self.predicted,
            "computed": self.computed,
            "pass": self.passed,
            "ms": self.ms,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CheckResult":
        return cls(data["name"], data["predicted"], data["computed"], data["pass"], data["ms"])


@dataclass(frozen=True)
class SkippedCheck:
    name: str
    reason: str


@dataclass(frozen=True)
class Finding:
    name: str
    detail: str


@dataclass
class VerificationReport:
    """
    Results of one verification run at a single (n, q).

    The run passes when every check passes. Skipped checks and findings are
    recorded without affecting the outcome.
    """

    n: int
    q: int
    suite: str
    checks: list[CheckResult] = field(default_factory=list)
    engine_agreement: bool = True
    skipped: list[SkippedCheck] = field(default_factory=list)
    findings: list[Finding] = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return self.engine_agreement and all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "params": {"n": self.n, "q": self.q, "suite": self.suite},
            "checks": [c.to_dict() for c in self.checks],
            "engine_agreement": self.engine_agreement,
            "version": self.version,
            "skipped": [asdict(s) for s in self.skipped],
            "findings": [asdict(f) for f in self.findings],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "VerificationReport":
        params = data["params"]
        return cls(
            n=params["n"],
            q=params["q"],
            suite=params["suite"],
            checks=[CheckResult.from_dict(c) for c in data["checks"]],
            engine_agreement=data["engine_agreement"],
            skipped=[SkippedCheck(**s) for s in data.get("skipped", [])],
            findings=[Finding(**f) for f in data.get("findings", [])],
            version=data["version"],
        )

    def to_json(self, pretty: bool = False) -> str:
        return format_json_output(self.to_dict(), pretty=pretty)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        """One row per check: name, predicted, computed, pass, ms."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["name", "predicted", "computed", "pass", "ms"])
        for c in self.checks:
            writer.writerow([c.name, c.predicted, c.computed, "true" if c.passed else "false", c.ms])
        return buffer.getvalue()

    def to_text(self) -> str:
        lines = [f"Verification of V({self.n},{self.q}), suite '{self.suite}'"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name.ljust(width)}  predicted {c.predicted}, computed {c.computed}")
        for s in self.skipped:
            lines.append(f"  [SKIP] {s.name}: {s.reason}")
        for f in self.findings:
            lines.append(f"  [NOTE] {f.name}: {f.detail}")
        lines.append(f"Engines agree: {'yes' if self.engine_agreement else 'NO'}")
        lines.append(f"Result: {'PASS' if self.passed else 'FAIL'} ({len(self.checks) - len(self.failures)}/{len(self.checks)} checks)")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str, pretty: bool = False) -> str:
        if fmt == "json":
            return self.to_json(pretty) + "\n"
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()
