"""Check reports: per-identity pass/fail records with an overall verdict."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .polycore import PolyMap, first_difference, map_equal


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    CANNOT_CERTIFY = "cannot-certify"


@dataclass(frozen=True)
class CheckRecord:
    name: str
    law: str  # the identity or axiom the record tests, e.g. "lambda K = 1"
    status: Status
    witness: Optional[str] = None


@dataclass
class Report:
    """An ordered list of check records about one subject."""

    subject: str
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    def check_equal(self, name: str, law: str, lhs: PolyMap, rhs: PolyMap) -> bool:
        """Record exact equality of two maps; on failure keep a witness monomial."""
        if map_equal(lhs, rhs):
            self.add(CheckRecord(name, law, Status.PASS))
            return True
        self.add(CheckRecord(name, law, Status.FAIL, first_difference(lhs, rhs)))
        return False

    def check(self, name: str, law: str, ok: bool, witness: Optional[str] = None) -> bool:
        self.add(CheckRecord(name, law, Status.PASS if ok else Status.FAIL, None if ok else witness))
        return ok

    def cannot_certify(self, name: str, law: str, witness: Optional[str] = None) -> None:
        self.add(CheckRecord(name, law, Status.CANNOT_CERTIFY, witness))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for r in other.records:
            self.add(CheckRecord(prefix + r.name, r.law, r.status, r.witness))

    @property
    def verdict(self) -> Status:
        """Conjunction of the records, with cannot-certify propagating."""
        if any(r.status is Status.FAIL for r in self.records):
            return Status.FAIL
        if any(r.status is Status.CANNOT_CERTIFY for r in self.records):
            return Status.CANNOT_CERTIFY
        return Status.PASS

    @property
    def passed(self) -> bool:
        return self.verdict is Status.PASS

    def failing(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status is not Status.PASS]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "verdict": self.verdict.value,
            "checks": [
                {
                    "name": r.name,
                    "law": r.law,
                    "status": r.status.value,
                    **({"witness": r.witness} if r.witness else {}),
                }
                for r in self.records
            ],
        }

    def render_text(self) -> str:
        lines = [f"subject: {self.subject}"]
        for r in self.records:
            line = f"  [{r.status.value:>14}] {r.name}  ({r.law})"
            if r.witness:
                line += f"  -- {r.witness}"
            lines.append(line)
        lines.append(f"verdict: {self.verdict.value}")
        return "\n".join(lines) + "\n"
