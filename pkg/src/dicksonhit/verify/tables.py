"""Predicted Steenrod action on V_n and Q_{n,s}, compared with direct computation.

The predicted values are returned as exponent data so the symbolic calculus
can reuse them: for V_n a list of ``(exponent of V_n, exponents of
Q_{n-1,0..n-2})`` and for Q_{n,s} a list of exponent tuples of
``Q_{n,0..n-1}``.  More than one entry would mean two table rows fire for the
same ``i``; the checks report that instead of hiding it.

For the product row (``Q_{n,r} Q_{n,t}`` with ``r <= s < t``) ``t`` runs up to
``n - 1``.  Allowing ``t = n`` would only duplicate the first row, because
Q_{n,n} = 1.
"""

from __future__ import annotations

import time

from ..dickson import dickson_q, v_poly
from ..f2poly import Polynomial
from ..hitsolver import HitSolver, ResourceCeilingExceeded, is_hit, verify_certificate
from ..steenrod import Kind, OperatorWord, apply_word, chi_sq, sq
from .reports import CEILING, EXACT, FAILED, MOD_HIT, ReplayReport, Step


def _unit(k: int, length: int, times: int = 1) -> tuple[int, ...]:
    e = [0] * length
    if k < length:
        e[k] += times
    return tuple(e)


def predicted_sq_on_V_exps(n: int, i: int) -> list[tuple[int, tuple[int, ...]]]:
    width = n - 1
    zero = (0,) * width
    out = []
    if i == 0:
        out.append((1, zero))
    if i == 2 ** (n - 1):
        out.append((2, zero))
    for s in range(n - 1):
        if i == 2 ** (n - 1) - 2**s:
            out.append((1, _unit(s, width)))
    return out


def predicted_sq_on_Q_exps(n: int, s: int, i: int) -> list[tuple[int, ...]]:
    if not 0 <= s < n:
        raise ValueError("table covers 0 <= s < n")
    out = []
    for r in range(s + 1):
        if i == 2**s - 2**r:
            out.append(_unit(r, n))
    for t in range(s + 1, n):
        for r in range(s + 1):
            if i == 2**n - 2**t + 2**s - 2**r:
                e = list(_unit(r, n))
                e[t] += 1
                out.append(tuple(e))
    if i == 2**n - 2**s:
        out.append(_unit(s, n, 2))
    return out


def _q_product(n: int, exps: tuple[int, ...], ring: int) -> Polynomial:
    result = Polynomial.one(ring)
    for s, e in enumerate(exps):
        if e:
            result = result * dickson_q(n, s).embed(ring) ** e
    return result


def predicted_sq_on_V(n: int, i: int) -> Polynomial:
    acc = Polynomial.zero(n)
    for v_exp, q_exps in predicted_sq_on_V_exps(n, i):
        q = _q_product(n - 1, q_exps, n) if n > 1 else Polynomial.one(n)
        acc = acc + v_poly(n) ** v_exp * q
    return acc


def predicted_sq_on_Q(n: int, s: int, i: int) -> Polynomial:
    acc = Polynomial.zero(n)
    for exps in predicted_sq_on_Q_exps(n, s, i):
        acc = acc + _q_product(n, exps, n)
    return acc


def _compare(case: str, params: dict, computed: Polynomial, predicted: Polynomial, t0: float, **detail) -> ReplayReport:
    diff = computed + predicted
    report = ReplayReport(
        case,
        params,
        EXACT if not diff else FAILED,
        difference=diff if diff else None,
        timing=time.perf_counter() - t0,
    )
    if detail:
        report.steps.append(Step("table lookup", EXACT if not diff else FAILED, detail))
    return report


def check_sq_on_V(n: int, i: int) -> ReplayReport:
    t0 = time.perf_counter()
    rows = predicted_sq_on_V_exps(n, i)
    return _compare(
        "sq-on-V",
        {"n": n, "i": i},
        sq(i, v_poly(n)),
        predicted_sq_on_V(n, i),
        t0,
        matched_rows=len(rows),
    )


def check_sq_on_Q(n: int, s: int, i: int) -> ReplayReport:
    t0 = time.perf_counter()
    rows = predicted_sq_on_Q_exps(n, s, i)
    return _compare(
        "sq-on-Q",
        {"n": n, "s": s, "i": i},
        sq(i, dickson_q(n, s)),
        predicted_sq_on_Q(n, s, i),
        t0,
        matched_rows=len(rows),
    )


def v_identity_rhs(n: int) -> Polynomial:
    """sum_{s=1..n} Sq^1(Q_{n,s} x_{n+1}^(2^s - 1)) in n+1 variables."""
    ring = n + 1
    x = Polynomial.var(ring, ring)
    acc = Polynomial.zero(ring)
    for s in range(1, n + 1):
        acc = acc + sq(1, dickson_q(n, s).embed(ring) * x ** (2**s - 1))
    return acc


def check_V_identity(n: int) -> ReplayReport:
    t0 = time.perf_counter()
    return _compare("v-identity", {"n": n}, v_identity_rhs(n), v_poly(n + 1), t0)


def check_sq_vanishing_on_V4_powers(a: int, i: int) -> ReplayReport:
    """Sq^i(V_4^a) for 1 <= i <= 4: zero, except V_4^a Q_{3,2} when i = 4 and a is odd."""
    t0 = time.perf_counter()
    v = v_poly(4)
    va = v**a
    if i == 4 and a % 2:
        predicted = va * dickson_q(3, 2).embed(4)
    else:
        predicted = Polynomial.zero(4)
    return _compare("sq-on-V4-powers", {"a": a, "i": i}, sq(i, va), predicted, t0)


def davis_word(n: int) -> OperatorWord:
    """Sq^(2^(n-1)) ... Sq^8 chi(Sq^4), of total degree 2^n - 4."""
    squares = [(Kind.SQ, 2**j) for j in range(n - 1, 2, -1)]
    return OperatorWord(tuple(squares) + ((Kind.CHI_SQ, 4),))


def check_davis_composite(n: int, f: Polynomial, solver: HitSolver | None = None) -> ReplayReport:
    """chi(Sq^(2^n - 4)) f against the composite word applied to f."""
    t0 = time.perf_counter()
    params = {"n": n, "nvars": f.nvars, "f": str(f)}
    lhs = chi_sq(2**n - 4, f)
    rhs = apply_word(davis_word(n), f)
    diff = lhs + rhs
    if not diff:
        return ReplayReport("davis", params, EXACT, timing=time.perf_counter() - t0)
    try:
        result = is_hit(diff, solver=solver)
    except ResourceCeilingExceeded as exc:
        report = ReplayReport("davis", params, FAILED, difference=diff)
        report.steps.append(Step("difference hit", CEILING, {"reason": str(exc)}))
        report.timing = time.perf_counter() - t0
        return report
    if result.hit and verify_certificate(diff, result):
        return ReplayReport(
            "davis", params, MOD_HIT, difference=diff, certificate=result,
            timing=time.perf_counter() - t0,
        )
    return ReplayReport("davis", params, FAILED, difference=diff, timing=time.perf_counter() - t0)
