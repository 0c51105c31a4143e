"""Structured reports emitted by the verifiers, with JSON and CSV flattening."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

__all__ = ["WitnessReport", "TheoremReport", "json_value", "CSV_COLUMNS"]


def json_value(value: Any) -> Any:
    """Render a report value for JSON: exact ratios as strings, tuples as lists."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool) or isinstance(value, int) or isinstance(value, str):
        return value
    if value is None:
        return None
    if isinstance(value, Mapping):
        return {str(k): json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_value(v) for v in value]
    raise TypeError(f"cannot serialize report value of type {type(value).__name__}")


@dataclass(frozen=True)
class WitnessReport:
    """A subgroup witnessing a theorem's conclusion, with its headline stats."""

    members: tuple[int, ...]
    order: int
    index: int
    nilpotency_class: int | None
    derived_order: int

    def to_json_dict(self) -> dict:
        return {
            "members": list(self.members),
            "order": self.order,
            "index": self.index,
            "nilpotency_class": self.nilpotency_class,
            "derived_order": self.derived_order,
        }


@dataclass(frozen=True)
class TheoremReport:
    """One verifier run: hypothesis quantities, optional witness, data points."""

    theorem_id: str
    group: str
    group_order: int
    hypothesis: tuple[tuple[str, Any], ...]
    witness: WitnessReport | None
    data_points: tuple[tuple[str, Any], ...]
    passed: bool

    def hypothesis_value(self, name: str) -> Any:
        for key, value in self.hypothesis:
            if key == name:
                return value
        raise KeyError(name)

    def data_value(self, name: str) -> Any:
        for key, value in self.data_points:
            if key == name:
                return value
        raise KeyError(name)

    @property
    def hypothesis_holds(self) -> bool | None:
        for key, value in self.hypothesis:
            if key == "holds":
                return bool(value)
        return None

    def to_json_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "group": self.group,
            "group_order": self.group_order,
            "hypothesis": {k: json_value(v) for k, v in self.hypothesis},
            "witness": self.witness.to_json_dict() if self.witness else None,
            "data_points": [[k, json_value(v)] for k, v in self.data_points],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=False)

    def csv_row(self) -> dict[str, str]:
        eps = ""
        pr = None
        for key, value in self.hypothesis:
            if key == "epsilon":
                eps = json_value(value)
            elif key == "pr" and isinstance(value, Fraction):
                pr = value
        holds = self.hypothesis_holds
        return {
            "group": self.group,
            "group_order": str(self.group_order),
            "theorem_id": self.theorem_id,
            "epsilon": str(eps),
            "pr": f"{pr.numerator}/{pr.denominator}" if pr is not None else "",
            "pr_approx": f"{float(pr):.6f}" if pr is not None else "",
            "hypothesis_holds": "" if holds is None else str(holds).lower(),
            "passed": str(self.passed).lower(),
            "witness_order": str(self.witness.order) if self.witness else "",
            "witness_index": str(self.witness.index) if self.witness else "",
            "witness_class": (
                str(self.witness.nilpotency_class)
                if self.witness and self.witness.nilpotency_class is not None
                else ""
            ),
            "witness_derived_order": str(self.witness.derived_order) if self.witness else "",
            "data_json": json.dumps(
                [[k, json_value(v)] for k, v in self.data_points], sort_keys=False
            ),
        }


CSV_COLUMNS: tuple[str, ...] = (
    "group",
    "group_order",
    "theorem_id",
    "epsilon",
    "pr",
    "pr_approx",
    "hypothesis_holds",
    "passed",
    "witness_order",
    "witness_index",
    "witness_class",
    "witness_derived_order",
    "data_json",
)
