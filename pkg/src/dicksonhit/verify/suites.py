"""Named batches of checks, shared by the command line and the acceptance tests."""

from __future__ import annotations

import itertools
import random
import time
from typing import Callable

from ..dickson import dickson_q, dickson_q_oracle, gl_invariance_check, v_poly
from ..f2poly import Polynomial, monomials_of_degree
from ..hitsolver import HitSolver, ResourceCeilingExceeded, verify_certificate
from ..steenrod import chi_sq_sequence, chi_trick_certificate, chi_trick_residue, sq
from .reports import CEILING, EXACT, FAILED, HIT, MOD_HIT, ReplayReport, Step
from .replay import grid_order, replay_case, replay_grid
from .tables import (
    check_davis_composite,
    check_sq_on_Q,
    check_sq_on_V,
    check_sq_vanishing_on_V4_powers,
    check_V_identity,
)

DEFAULT_SEED = 1729


def random_polynomial(rng: random.Random, nvars: int, degree: int) -> Polynomial:
    """A nonzero homogeneous polynomial, each monomial present with probability 1/2."""
    mons = monomials_of_degree(nvars, degree).monomials
    while True:
        picked = [m for m in mons if rng.random() < 0.5]
        if picked:
            return Polynomial(nvars, picked)


def sq_tables_suite(ns=(2, 3, 4)) -> list[ReplayReport]:
    out = []
    for n in ns:
        for i in range(2 ** (n - 1) + 1):
            out.append(check_sq_on_V(n, i))
        for s in range(n):
            for i in range(2**n - 2**s + 1):
                out.append(check_sq_on_Q(n, s, i))
    return out


def v_identity_suite(ns=(1, 2, 3, 4)) -> list[ReplayReport]:
    return [check_V_identity(n) for n in ns]


def dickson_oracle_suite(max_n: int = 5, recursion_n: int = 4) -> list[ReplayReport]:
    out = []
    for n in range(1, max_n + 1):
        for s in range(n + 1):
            t0 = time.perf_counter()
            diff = dickson_q(n, s) + dickson_q_oracle(n, s)
            out.append(
                ReplayReport(
                    "dickson-oracle",
                    {"n": n, "s": s},
                    FAILED if diff else EXACT,
                    difference=diff or None,
                    timing=time.perf_counter() - t0,
                )
            )
    for n in range(1, recursion_n + 1):
        v = v_poly(n + 1)
        for k in range(n + 1):
            t0 = time.perf_counter()
            rhs = v * dickson_q(n, k).embed(n + 1)
            if k >= 1:
                rhs = rhs + dickson_q(n, k - 1).embed(n + 1).square()
            diff = dickson_q(n + 1, k) + rhs
            out.append(
                ReplayReport(
                    "dickson-recursion",
                    {"n": n, "k": k},
                    FAILED if diff else EXACT,
                    difference=diff or None,
                    timing=time.perf_counter() - t0,
                )
            )
    for n in range(1, recursion_n + 1):
        for s in range(n):
            t0 = time.perf_counter()
            ok = gl_invariance_check(n, dickson_q(n, s))
            out.append(
                ReplayReport(
                    "gl-invariance",
                    {"n": n, "s": s},
                    EXACT if ok else FAILED,
                    difference=None if ok else dickson_q(n, s),
                    timing=time.perf_counter() - t0,
                )
            )
    return out


def antipode_suite(seed: int = DEFAULT_SEED, count: int = 50, max_k: int = 10) -> list[ReplayReport]:
    """sum_{i+j=k} Sq^i chi(Sq^j) f = 0, and the mirrored sum, for 1 <= k <= max_k."""
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        nvars = rng.randint(1, 3)
        degree = rng.randint(0, 8)
        f = random_polynomial(rng, nvars, degree)
        t0 = time.perf_counter()
        chis = chi_sq_sequence(max_k, f)
        bad = []
        for k in range(1, max_k + 1):
            left = Polynomial.zero(nvars)
            right = Polynomial.zero(nvars)
            for i in range(k + 1):
                left = left + sq(i, chis[k - i])
                right = right + chi_sq_sequence(i, sq(k - i, f))[i]
            if left or right:
                bad.append(k)
        report = ReplayReport(
            "antipode",
            {"index": idx, "nvars": nvars, "degree": degree, "f": str(f)},
            FAILED if bad else EXACT,
            timing=time.perf_counter() - t0,
        )
        if bad:
            report.notes.append(f"relation fails for k in {bad}")
            report.difference = f
        out.append(report)
    return out


def chi_trick_triples(seed: int = DEFAULT_SEED, count: int = 25):
    rng = random.Random(seed)
    triples = []
    while len(triples) < count:
        nvars = rng.randint(1, 3)
        k = rng.randint(1, 6)
        du = rng.randint(0, 6)
        dv = rng.randint(1, 6)
        if du + dv + k > 14:
            continue
        u = random_polynomial(rng, nvars, du)
        v = random_polynomial(rng, nvars, dv)
        triples.append((u, k, v))
    return triples


def chi_trick_suite(
    seed: int = DEFAULT_SEED, count: int = 25, solver: HitSolver | None = None
) -> list[ReplayReport]:
    solver = solver or HitSolver()
    out = []
    for idx, (u, k, v) in enumerate(chi_trick_triples(seed, count)):
        t0 = time.perf_counter()
        residue = chi_trick_residue(u, k, v)
        params = {"index": idx, "nvars": u.nvars, "u": str(u), "k": k, "v": str(v)}
        report = ReplayReport("chi-trick", params, EXACT if not residue else MOD_HIT)
        explicit_ok = verify_certificate(residue, _cert(chi_trick_certificate(u, k, v)))
        report.steps.append(Step("explicit chi-trick preimage", HIT if explicit_ok else FAILED))
        if residue:
            try:
                result = solver.is_hit(residue)
            except ResourceCeilingExceeded as exc:
                report.steps.append(Step("solver", CEILING, {"reason": str(exc)}))
            else:
                ok = result.hit and verify_certificate(residue, result)
                report.steps.append(Step("solver certificate", HIT if ok else FAILED))
                if ok:
                    report.certificate = result
                else:
                    report.status = FAILED
                    report.difference = residue
        if not explicit_ok:
            report.status = FAILED
            report.difference = residue or None
        report.timing = time.perf_counter() - t0
        out.append(report)
    return out


def _cert(terms):
    from ..hitsolver import HitCertificate

    return HitCertificate(tuple(terms))


def davis_inputs(max_degree: int = 8, max_vars: int = 2) -> list[Polynomial]:
    inputs = []
    for nvars in range(1, max_vars + 1):
        for d in range(max_degree + 1):
            inputs.extend(Polynomial.monomial(m) for m in monomials_of_degree(nvars, d).monomials)
    return inputs


def davis_suite(
    n: int = 4, max_degree: int = 8, max_vars: int = 2, solver: HitSolver | None = None
) -> list[ReplayReport]:
    solver = solver or HitSolver()
    return [check_davis_composite(n, f, solver) for f in davis_inputs(max_degree, max_vars)]


def cases_suite(solver: HitSolver | None = None, rounds: int = 3) -> list[ReplayReport]:
    solver = solver or HitSolver()
    out = [check_sq_vanishing_on_V4_powers(a, i) for a in range(1, 7) for i in range(1, 5)]
    for case, spec in sorted(replay_grid(), key=grid_order):
        out.append(replay_case(case, spec, solver=solver, rounds=rounds))
    return out


SUITES: dict[str, Callable[..., list[ReplayReport]]] = {
    "sq-tables": lambda seed, solver: sq_tables_suite(),
    "v-identity": lambda seed, solver: v_identity_suite(),
    "dickson-oracle": lambda seed, solver: dickson_oracle_suite(),
    "antipode": lambda seed, solver: antipode_suite(seed),
    "chi-trick": lambda seed, solver: chi_trick_suite(seed, solver=solver),
    "davis": lambda seed, solver: davis_suite(solver=solver),
    "cases": lambda seed, solver: cases_suite(solver),
}


def run_suite(name: str, seed: int = DEFAULT_SEED, solver: HitSolver | None = None) -> list[ReplayReport]:
    solver = solver or HitSolver()
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(SUITES[key](seed, solver))
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed, solver)
