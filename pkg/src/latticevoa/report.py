"""Check reports with reproducible counterexample records."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def jsonable(x: Any) -> Any:
    """Exact, deterministic JSON form: fractions become strings, never floats."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "render"):
        return x.render()
    return str(x)


@dataclass
class CheckReport:
    name: str
    instances_checked: int = 0
    failures: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, inputs: dict, lhs, rhs) -> bool:
        self.instances_checked += 1
        ok = lhs == rhs
        if not ok:
            self.failures.append({"inputs": inputs, "lhs": jsonable(lhs), "rhs": jsonable(rhs)})
        return ok

    def fail(self, inputs: dict, lhs, rhs) -> None:
        self.instances_checked += 1
        self.failures.append({"inputs": inputs, "lhs": jsonable(lhs), "rhs": jsonable(rhs)})

    def ok(self, n: int = 1) -> None:
        self.instances_checked += n

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.instances_checked += other.instances_checked
        self.failures.extend(other.failures)
        return self

    def to_dict(self) -> dict:
        out = {"name": self.name, "checked": self.instances_checked, "failures": jsonable(self.failures)}
        if self.details:
            out["details"] = jsonable(self.details)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
