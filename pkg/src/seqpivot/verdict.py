"""Pass/fail records with re-checkable witnesses."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def _enc(value):
    if value is None:
        return None
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    if isinstance(value, (tuple, list)):
        return [_enc(v) for v in value]
    return value


def _dec(value):
    if value is None:
        return None
    if isinstance(value, list):
        return tuple(_dec(v) for v in value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            return value
    return value


@dataclass(frozen=True)
class Witness:
    """A concrete point where a property fails.

    ``lhs`` and ``rhs`` are the two sides of the violated inequality, in the
    orientation the property requires (``lhs >= rhs`` was expected).
    """

    profile: tuple = ()
    player: int | None = None
    deviation: Any = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "profile": _enc(self.profile),
            "player": self.player,
            "deviation": _enc(self.deviation),
            "lhs": _enc(self.lhs),
            "rhs": _enc(self.rhs),
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Witness":
        deviation = data.get("deviation")
        return cls(
            profile=_dec(data.get("profile")) or (),
            player=data.get("player"),
            deviation=_dec(deviation),
            lhs=_dec(data.get("lhs")),
            rhs=_dec(data.get("rhs")),
            note=data.get("note", ""),
        )


@dataclass
class Verdict:
    """Outcome of an exhaustive check.

    Every violation found is kept in ``violations``; ``witness`` is the first.
    """

    property: str
    holds: bool = True
    violations: list[Witness] = field(default_factory=list)
    checked: int = 0
    details: dict = field(default_factory=dict)

    @property
    def witness(self) -> Witness | None:
        return self.violations[0] if self.violations else None

    def count(self, k: int = 1) -> None:
        self.checked += k

    def fail(self, witness: Witness) -> None:
        self.holds = False
        self.violations.append(witness)

    def merge(self, other: "Verdict") -> None:
        self.checked += other.checked
        for w in other.violations:
            self.fail(w)

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self, max_violations: int | None = None) -> dict:
        shown = self.violations if max_violations is None else self.violations[:max_violations]
        return {
            "property": self.property,
            "holds": self.holds,
            "witness": self.witness.to_dict() if self.witness else None,
            "violations": [w.to_dict() for w in shown],
            "violation_count": len(self.violations),
            "checked": self.checked,
            "details": self.details,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        verdict = cls(
            property=data["property"],
            holds=data["holds"],
            checked=data.get("checked", 0),
            details=data.get("details", {}),
        )
        verdict.violations = [Witness.from_dict(w) for w in data.get("violations", [])]
        return verdict

    def summary(self) -> str:
        status = "PASS" if self.holds else "FAIL"
        line = f"[{status}] {self.property} ({self.checked} checks)"
        if self.witness is not None:
            w = self.witness
            prof = ",".join(str(v) for v in w.profile)
            line += f"; witness profile=({prof})"
            if w.player is not None:
                line += f" player={w.player}"
            if w.deviation is not None:
                line += f" deviation={w.deviation}"
            if w.lhs is not None or w.rhs is not None:
                line += f" lhs={w.lhs} rhs={w.rhs}"
            if w.note:
                line += f" ({w.note})"
        return line
