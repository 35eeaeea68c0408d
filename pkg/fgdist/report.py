"""Pass/fail reports shared by every check in the package."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .errors import AxiomViolation


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check."""
    name: str
    passed: bool
    witness: Optional[str] = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'witness': self.witness,
            'detail': self.detail,
        }


@dataclass
class Report:
    """
    Ordered collection of check results.

    ``facts`` carries informational values (counts, flags) that are not
    pass/fail outcomes.
    """
    title: str
    results: List[CheckResult] = field(default_factory=list)
    facts: Dict[str, Any] = field(default_factory=dict)

    def record(self, name: str, passed: bool, witness: Optional[str] = None,
               detail: str = "") -> CheckResult:
        result = CheckResult(name, passed, witness, detail)
        self.results.append(result)
        return result

    def extend(self, other: "Report") -> "Report":
        self.results.extend(other.results)
        for key, value in other.facts.items():
            self.facts.setdefault(key, value)
        return self

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def failures(self) -> List[CheckResult]:
        return [result for result in self.results if not result.passed]

    def first_failure(self) -> Optional[CheckResult]:
        failures = self.failures()
        return failures[0] if failures else None

    def result(self, name: str) -> Optional[CheckResult]:
        """First result with the given name."""
        for result in self.results:
            if result.name == name:
                return result
        return None

    def require(self) -> "Report":
        """Raise ``AxiomViolation`` for the first failure, else return self."""
        failure = self.first_failure()
        if failure is not None:
            raise AxiomViolation(failure.name, failure.witness, failure.detail)
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            'title': self.title,
            'passed': self.passed,
            'results': [result.to_dict() for result in self.results],
            'facts': dict(self.facts),
        }

    def to_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for result in self.results:
            line = f"  [{'ok' if result.passed else 'FAIL'}] {result.name}"
            if result.detail:
                line += f": {result.detail}"
            if result.witness:
                line += f" (witness: {result.witness})"
            lines.append(line)
        for key, value in self.facts.items():
            lines.append(f"  {key}: {value}")
        return "\n".join(lines)
