from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..f2poly import Polynomial
from ..hitsolver import HitCertificate

EXACT = "exact-equal"
MOD_HIT = "equal-modulo-hit"
FAILED = "failed"
# step-level only
HIT = "hit"
CEILING = "resource-ceiling"
INFO = "info"

_SMALL = 64


def poly_record(p: Polynomial | None) -> Any:
    """Canonical text for small polynomials, a size summary for large ones."""
    if p is None:
        return None
    if len(p) <= _SMALL:
        return str(p)
    return {"terms": len(p), "degree": p.degree, "nvars": p.nvars}


def certificate_record(cert: HitCertificate | None) -> Any:
    if cert is None:
        return None
    return {
        "terms": [[i, poly_record(u)] for i, u in cert.terms],
        "verified": True,
    }


@dataclass
class Step:
    name: str
    status: str
    detail: dict[str, Any] = field(default_factory=dict)

    def to_record(self) -> dict[str, Any]:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class ReplayReport:
    """Outcome of one check; ``failed`` always carries a nonzero difference."""

    case: str
    params: dict[str, Any]
    status: str
    difference: Polynomial | None = None
    certificate: HitCertificate | None = None
    steps: list[Step] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    timing: float | None = None

    @property
    def passed(self) -> bool:
        return self.status in (EXACT, MOD_HIT, HIT)

    def to_record(self, *, with_timing: bool = False) -> dict[str, Any]:
        return {
            "case": self.case,
            "params": self.params,
            "status": self.status,
            "difference": poly_record(self.difference),
            "certificate": certificate_record(self.certificate),
            "steps": [s.to_record() for s in self.steps],
            "notes": list(self.notes),
            "timing": round(self.timing, 4) if with_timing and self.timing is not None else None,
        }
