from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from ..dickson import a_form, enumerate_dickson_monomials
from ..hitsolver import HitSolver, ResourceCeilingExceeded, verify_certificate


@dataclass
class ScanReport:
    """Per-degree outcome of hit-testing every Dickson monomial of D_n.

    ``status`` is ``all-hit``, ``certificate-failure``, ``not-hit-found`` (for n >= 3 a
    counterexample, for n <= 2 the expected outcome), or ``incomplete`` when
    some degree hit a resource ceiling.
    """

    n: int
    d_max: int
    degrees: list[dict[str, Any]] = field(default_factory=list)
    timing: float | None = None

    @property
    def not_hit(self) -> list[str]:
        return [label for row in self.degrees for label in row.get("not_hit", [])]

    @property
    def ceilings(self) -> list[int]:
        return [row["degree"] for row in self.degrees if row.get("ceiling")]

    @property
    def status(self) -> str:
        if any(row.get("verified", 0) != row.get("hit", 0) for row in self.degrees):
            return "certificate-failure"
        if self.not_hit:
            return "not-hit-found"
        if self.ceilings:
            return "incomplete"
        return "all-hit"

    @property
    def total(self) -> int:
        return sum(row["monomials"] for row in self.degrees)

    @property
    def verified(self) -> int:
        return sum(row.get("verified", 0) for row in self.degrees)

    def to_record(self, *, with_timing: bool = False) -> dict[str, Any]:
        rows = []
        for row in self.degrees:
            row = dict(row)
            if not with_timing:
                row["timing"] = None
            rows.append(row)
        return {
            "n": self.n,
            "d_max": self.d_max,
            "status": self.status,
            "expected": "not-hit-found" if self.n <= 2 else "all-hit",
            "monomials": self.total,
            "verified_certificates": self.verified,
            "degrees": rows,
            "coverage": "empirical: every Dickson monomial up to d_max, no symbolic termination argument",
            "timing": round(self.timing, 3) if with_timing and self.timing is not None else None,
        }


def main_theorem_scan(n: int, d_max: int, *, solver: HitSolver | None = None) -> ScanReport:
    """Hit-test every Dickson monomial of positive degree <= d_max in n variables."""
    solver = solver or HitSolver()
    report = ScanReport(n, d_max)
    t0 = time.perf_counter()
    for d in range(1, d_max + 1):
        specs = enumerate_dickson_monomials(n, d)
        if not specs:
            continue
        t1 = time.perf_counter()
        row: dict[str, Any] = {"degree": d, "monomials": len(specs)}
        try:
            basis = solver.basis(n, d)
        except ResourceCeilingExceeded as exc:
            row.update(ceiling=True, reason=str(exc), timing=time.perf_counter() - t1)
            report.degrees.append(row)
            continue
        hit = verified = 0
        missing = []
        for spec in specs:
            f = a_form(spec)
            result = basis.decide(f)
            if result.hit:
                hit += 1
                verified += verify_certificate(f, result)
            else:
                missing.append(spec.label())
        row.update(
            columns=basis.ncols,
            rank=basis.rank,
            hit=hit,
            verified=verified,
            not_hit=missing,
            timing=round(time.perf_counter() - t1, 3),
        )
        report.degrees.append(row)
    report.timing = time.perf_counter() - t0
    return report
