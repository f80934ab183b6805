"""Machine-checked certificate reports: named checks with status and witness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


def wit(x):
    """Normalize a witness payload into JSON-able data."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, (list, tuple)):
        return [wit(v) for v in x]
    if isinstance(x, dict):
        return {str(k): wit(v) for k, v in x.items()}
    return repr(x)


@dataclass
class Check:
    id: str
    status: str
    claim: str = ""
    witness: object = None

    def as_dict(self):
        return {
            "id": self.id,
            "claim": self.claim,
            "status": self.status,
            "witness": wit(self.witness),
        }


@dataclass
class CertificateReport:
    suite: str
    params: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def add(self, id: str, ok, claim: str = "", witness=None) -> Check:
        """Record a boolean check (or pass a status string directly)."""
        if isinstance(ok, str):
            status = ok
        else:
            status = PASS if ok else FAIL
        if any(c.id == id for c in self.checks):
            raise ValueError(f"duplicate check id {id!r}")
        c = Check(id, status, claim, witness)
        self.checks.append(c)
        return c

    def extend(self, other: "CertificateReport", prefix: str = ""):
        for c in other.checks:
            self.add(prefix + c.id, c.status, c.claim, c.witness)

    @property
    def failed(self):
        return [c for c in self.checks if c.status == FAIL]

    @property
    def inconclusive(self):
        return [c for c in self.checks if c.status == INCONCLUSIVE]

    def ok(self, strict: bool = False) -> bool:
        if self.failed:
            return False
        return not (strict and self.inconclusive)

    def as_dict(self):
        return {
            "suite": self.suite,
            "params": wit(self.params),
            "checks": [c.as_dict() for c in self.checks],
            "summary": {
                "total": len(self.checks),
                "pass": sum(1 for c in self.checks if c.status == PASS),
                "fail": len(self.failed),
                "inconclusive": len(self.inconclusive),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def table(self) -> str:
        width = max([len(c.id) for c in self.checks] + [5])
        lines = [f"suite: {self.suite}"]
        for c in self.checks:
            mark = {PASS: "ok", FAIL: "FAIL", INCONCLUSIVE: "????"}[c.status]
            lines.append(f"  {c.id.ljust(width)}  {mark:<4}  {c.claim}")
        s = self.as_dict()["summary"]
        lines.append(
            f"  {s['pass']}/{s['total']} passed"
            + (f", {s['fail']} failed" if s["fail"] else "")
            + (f", {s['inconclusive']} inconclusive" if s["inconclusive"] else "")
        )
        return "\n".join(lines)
