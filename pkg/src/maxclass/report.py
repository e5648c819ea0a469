"""Verification records and their JSON / text serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Entry:
    check_id: str
    family: str
    n: int
    status: str
    witness: Optional[Dict[str, Any]] = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "family": self.family,
            "n": self.n,
            "status": self.status,
            "witness": self.witness,
        }


def entry(check_id: str, spec, ok: bool, witness: Optional[dict] = None) -> Entry:
    return Entry(check_id, spec.family.value, spec.n, PASS if ok else FAIL, witness)


@dataclass
class VerificationReport:
    entries: List[Entry] = field(default_factory=list)
    seed: int = 0
    parameters: Dict[str, Any] = field(default_factory=dict)
    generated_at: str = ""

    @property
    def failed(self) -> List[Entry]:
        return [e for e in self.entries if e.status == FAIL]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def sort(self) -> None:
        order = {fam: i for i, fam in enumerate("dsq")}
        ids = self.parameters.get("checks", [])
        pos = {c: i for i, c in enumerate(ids)}
        self.entries.sort(key=lambda e: (pos.get(e.check_id, len(pos)), order.get(e.family, 9), e.n))

    def to_json(self) -> dict:
        # timing data lives in the header so that the body is reproducible byte for byte
        return {
            "header": {
                "generated_at": self.generated_at,
                "timings": {f"{e.check_id}/{e.family}/{e.n}": round(e.elapsed, 4) for e in self.entries},
            },
            "seed": self.seed,
            "parameters": self.parameters,
            "summary": {
                "total": len(self.entries),
                "pass": sum(e.status == PASS for e in self.entries),
                "fail": sum(e.status == FAIL for e in self.entries),
                "skipped": sum(e.status == SKIPPED for e in self.entries),
            },
            "entries": [e.as_dict() for e in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False, default=str)

    def to_text(self) -> str:
        lines = []
        for e in self.entries:
            lines.append(f"{e.status.upper():7s} {e.check_id:28s} {e.family.upper()} n={e.n}  ({e.elapsed:.2f}s)")
            if e.status == FAIL and e.witness:
                lines.append(f"        witness: {json.dumps(e.witness, default=str)}")
        s = self.to_json()["summary"]
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
        return "\n".join(lines)
