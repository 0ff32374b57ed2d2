"""Structured verdicts shared by every verification routine."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INCONSISTENT = "inconsistent"


@dataclass
class CheckReport:
    check_id: str
    params: dict[str, Any] = field(default_factory=dict)
    status: str = PASS
    weights: list[dict[str, Any]] = field(default_factory=list)
    witness: Any = None
    notes: list[str] = field(default_factory=list)
    elapsed_ms: int = 0
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def row(self, w: int, computed: int, expected: int | None, d: int | None = None,
            ok: bool | None = None) -> bool:
        if ok is None:
            ok = expected is None or computed == expected
        self.weights.append({"w": w, "d": d, "computed": computed, "expected": expected, "ok": bool(ok)})
        if not ok:
            self.fail({"w": w, "d": d, "computed": computed, "expected": expected})
        return bool(ok)

    def require(self, cond: bool, witness: Any = None, *, w: int | None = None,
                d: int | None = None) -> bool:
        """Record a boolean assertion as a 1/1 row (or fail with a witness)."""
        if w is not None:
            self.weights.append({"w": w, "d": d, "computed": int(bool(cond)), "expected": 1, "ok": bool(cond)})
        if not cond:
            self.fail(witness)
        return bool(cond)

    def fail(self, witness: Any, status: str = FAIL) -> None:
        if self.status == PASS:
            self.status = status
            self.witness = witness
        elif status == INCONSISTENT:
            self.status = status

    def note(self, text: str) -> None:
        self.notes.append(text)

    def finish(self) -> "CheckReport":
        self.elapsed_ms = int((time.perf_counter() - self._t0) * 1000)
        return self

    def merge(self, other: "CheckReport") -> None:
        self.weights.extend(other.weights)
        self.notes.extend(other.notes)
        if not other.ok:
            self.fail(other.witness, other.status)

    def to_json(self, with_time: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "check": self.check_id,
            "params": dict(sorted(self.params.items())),
            "status": self.status,
            "weights": self.weights,
            "witness": self.witness if self.status != PASS else None,
            "notes": self.notes,
        }
        if with_time:
            out["elapsed_ms"] = self.elapsed_ms
        return out
