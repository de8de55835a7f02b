"""Result records for identity checks and verification suites."""

import json
from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class Check:
    """Outcome of one exact identity check."""
    name: str
    passed: bool
    checked: int = 0
    failure: Optional[dict] = None
    note: str = ""

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "failure": self.failure, "note": self.note}


@dataclass
class Report:
    suite: str
    params: dict
    cases: int = 0
    passed: int = 0
    failures: List[dict] = field(default_factory=list)
    wall_time: float = 0.0

    def add_case(self, index: int, checks: List[Check], inputs: dict):
        self.cases += 1
        bad = [c for c in checks if not c.passed]
        if not bad:
            self.passed += 1
            return
        first = bad[0]
        failure = first.failure or {}
        self.failures.append({
            "case": index,
            "identity": first.name,
            "inputs": inputs,
            "lhs": failure.get("lhs"),
            "rhs": failure.get("rhs"),
            "detail": {k: v for k, v in failure.items() if k not in ("lhs", "rhs")},
        })

    @property
    def ok(self) -> bool:
        return not self.failures and self.passed == self.cases

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "cases": self.cases,
            "passed": self.passed,
            "failures": sorted(self.failures, key=lambda f: f["case"]),
            "wall_time": round(self.wall_time, 3),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)
