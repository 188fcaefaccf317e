"""Replay of the case analysis showing V_{n+1}^a prod Q_{n,s}^{n_s} is hit.

Notation used throughout: ``A = V^a Q0^n0 Q1^n1 ...`` in n+1 variables with
V = V_{n+1} and Qs = Q_{n,s}; ``W = sum_{s=1..n} Qs x_{n+1}^(2^s - 1)`` so that
Sq^1 W = V (n >= 2).

Cases, by parity of the exponents:

* C1  n1 even:                        A = Sq^1(W V^(a-1) P)
* C2  n1 odd, n2 even:                A = Sq^2(...) + Sq^1(...)
* C3  n = 3, n0 even, a odd:          chi-trick congruences, last term falls under C1/C2
* C4  n = 3, n0 even, a even:         D = Q0^n0 Q1 Q2 lies in Im(Sq^1..Sq^4), V^a kills Sq^1..4
* C5  n = 3, n0 odd, a odd:           A = V^(a-1) Sq^7(V) D', chi(Sq^i) kills V^(a-1) Sq^7 V
* C6  n = 3, n0 odd, a even:          V^a = Sq^4a ... Sq^8b V^b, terms reduce to C1/C2/C3/C5
* C7  n >= 4, n1 and n2 odd:          A = V^a Sq^(2^n - 4)(Q1) (...), expand and recurse

"(modulo the hits)" means: the difference of the two sides is fed to the
solver and must come back hit with a verified certificate.
"""

from __future__ import annotations

import itertools
import time
from typing import Callable, Iterator

from ..dickson import DicksonSpec, a_form, dickson_q, v_poly
from ..f2poly import Polynomial
from ..hitsolver import (
    HitCertificate,
    HitSolver,
    ResourceCeilingExceeded,
    verify_certificate,
)
from ..steenrod import (
    Kind,
    OperatorWord,
    apply_word,
    chi_sq,
    chi_trick_certificate,
    sq,
)
from .reports import CEILING, EXACT, FAILED, HIT, INFO, MOD_HIT, ReplayReport, Step
from .symbolic import DicksonCalculus
from .tables import check_sq_on_V, davis_word

CASES = ("C1", "C2", "C3", "C4", "C5", "C6", "C7")

# largest A-form degree whose concrete product is expanded in C7
MAX_EXPAND_DEGREE = 64


class CaseMismatch(ValueError):
    """The parameters do not satisfy the parity conditions of the case."""


def classify(spec: DicksonSpec) -> str:
    """Which case of the argument handles V^a prod Q^k."""
    k = spec.exps
    if len(k) < 2 or k[1] % 2 == 0:
        return "C1"
    if len(k) < 3 or k[2] % 2 == 0:
        return "C2"
    if spec.n >= 4:
        return "C7"
    if spec.n == 3:
        if k[0] % 2 == 0:
            return "C3" if spec.a % 2 else "C4"
        return "C5" if spec.a % 2 else "C6"
    return "none"


class _Replay:
    def __init__(self, case: str, spec: DicksonSpec, solver: HitSolver):
        self.case = case
        self.spec = spec
        self.solver = solver
        self.n = spec.n
        self.ring = spec.n + 1
        self.steps: list[Step] = []
        self.notes: list[str] = []
        self.certificate: HitCertificate | None = None
        self.failure: Polynomial | None = None

    # concrete building blocks in n+1 variables
    def V(self) -> Polynomial:
        return v_poly(self.ring)

    def Q(self, s: int) -> Polynomial:
        return dickson_q(self.n, s).embed(self.ring)

    def P(self, exps) -> Polynomial:
        return a_form(DicksonSpec(self.n, tuple(exps)), self.ring)

    def W(self) -> Polynomial:
        x = Polynomial.var(self.ring, self.ring)
        acc = Polynomial.zero(self.ring)
        for s in range(1, self.n + 1):
            acc = acc + self.Q(s) * x ** (2**s - 1)
        return acc

    def A(self) -> Polynomial:
        return a_form(self.spec, self.ring)

    # step recorders
    def exact(self, name: str, lhs: Polynomial, rhs: Polynomial) -> bool:
        diff = lhs + rhs
        if diff:
            self.steps.append(Step(name, FAILED, {"difference_terms": len(diff)}))
            self.failure = self.failure or diff
            return False
        self.steps.append(Step(name, EXACT, {"degree": lhs.degree}))
        return True

    def check(self, name: str, ok: bool, **detail) -> bool:
        self.steps.append(Step(name, EXACT if ok else FAILED, detail))
        return ok

    def hit(self, name: str, f: Polynomial, *, max_sq: int | None = None, status: str = HIT):
        """Membership of f in the (possibly restricted) hit space; returns the certificate."""
        detail = {"degree": f.degree, "nvars": f.nvars}
        if max_sq is not None:
            detail["max_sq"] = max_sq
        if not f:
            self.steps.append(Step(name, EXACT if status == MOD_HIT else HIT, detail))
            return HitCertificate(())
        try:
            result = self.solver.is_hit(f, max_sq=max_sq)
        except ResourceCeilingExceeded as exc:
            detail["reason"] = str(exc)
            self.steps.append(Step(name, CEILING, detail))
            return None
        if result.hit and verify_certificate(f, result):
            if max_sq is not None and any(i > max_sq for i, _ in result.terms):
                detail["error"] = "certificate uses a square above the restriction"
                self.steps.append(Step(name, FAILED, detail))
                self.failure = self.failure or f
                return None
            detail["certificate_terms"] = len(result.terms)
            self.steps.append(Step(name, status, detail))
            return result
        detail["residual_terms"] = 0 if result.hit else len(result.residual_polynomial)
        self.steps.append(Step(name, FAILED, detail))
        self.failure = self.failure or f
        return None

    def congruent(self, name: str, lhs: Polynomial, rhs: Polynomial, *, max_sq: int | None = None):
        if lhs == rhs:
            self.steps.append(Step(name, EXACT, {"degree": lhs.degree}))
            return HitCertificate(())
        return self.hit(name, lhs + rhs, max_sq=max_sq, status=MOD_HIT)

    def explicit(self, name: str, f: Polynomial, terms: list[tuple[int, Polynomial]]):
        cert = HitCertificate(tuple(terms))
        ok = verify_certificate(f, cert)
        self.steps.append(Step(name, HIT if ok else FAILED, {"certificate_terms": len(terms)}))
        if not ok:
            self.failure = self.failure or f
        return cert if ok else None

    def info(self, name: str, **detail) -> None:
        self.steps.append(Step(name, INFO, detail))

    def report(self, headline: str, t0: float) -> ReplayReport:
        failed = any(s.status == FAILED for s in self.steps)
        status = FAILED if failed else headline
        return ReplayReport(
            self.case,
            {"n": self.spec.n, "a": self.spec.a, "exps": list(self.spec.exps)},
            status,
            difference=self.failure if failed else None,
            certificate=self.certificate,
            steps=self.steps,
            notes=self.notes,
            timing=time.perf_counter() - t0,
        )


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CaseMismatch(message)


# -- C1 / C2 ---------------------------------------------------------------


def _c1(r: _Replay) -> str:
    spec = r.spec
    _require(spec.a >= 1 and r.n >= 2 and spec.exps[1] % 2 == 0, "C1 needs a >= 1, n >= 2, n1 even")
    u = r.W() * r.V() ** (spec.a - 1) * r.P(spec.exps)
    r.exact("A = Sq^1(W V^(a-1) P)", r.A(), sq(1, u))
    r.certificate = HitCertificate(((1, u),))
    return EXACT


def _c2(r: _Replay) -> str:
    spec = r.spec
    e = list(spec.exps)
    _require(
        spec.a >= 1 and r.n >= 3 and e[1] % 2 == 1 and e[2] % 2 == 0,
        "C2 needs a >= 1, n >= 3, n1 odd, n2 even",
    )
    shifted = e.copy()
    shifted[1] -= 1
    shifted[2] += 1
    first = r.V() ** spec.a * r.P(shifted)
    rest = shifted.copy()
    rest[1] = 0
    second = (
        r.W()
        * r.V() ** (spec.a - 1)
        * sq(1, r.Q(1) ** ((e[1] - 1) // 2)).square()
        * r.P(rest)
    )
    r.exact("A = Sq^2(...) + Sq^1(...)", r.A(), sq(2, first) + sq(1, second))
    r.certificate = HitCertificate(((1, second), (2, first)))
    return EXACT


# -- n = 3 cases -----------------------------------------------------------


def _odd_pair(spec: DicksonSpec) -> bool:
    return spec.exps[1] % 2 == 1 and spec.exps[2] % 2 == 1


def _restricted_membership(r: _Replay, D: Polynomial, name: str):
    """D (three variables) in the image of Sq^1 + ... + Sq^4."""
    return r.hit(name, D, max_sq=4)


def _c3(r: _Replay) -> str:
    spec = r.spec
    n0, n1, n2 = spec.exps
    _require(r.n == 3 and n0 % 2 == 0 and spec.a % 2 == 1 and _odd_pair(spec), "C3 needs n=3, n0 even, a odd, n1 n2 odd")
    V = r.V()
    A = r.A()
    u = V ** (spec.a - 1) * r.P((n0, n1, n2 - 1))
    r.exact("A = (V^(a-1) Sq^4 V) Q0^n0 Q1^n1 Q2^(n2-1)", A, V ** (spec.a - 1) * sq(4, V) * r.P((n0, n1, n2 - 1)))
    line2 = V * chi_sq(4, u)
    c1 = r.congruent("A == V chi(Sq^4)[V^(a-1) Q0^n0 Q1^n1 Q2^(n2-1)]", A, line2)
    r.explicit("chi-trick certificate for the first congruence", A + line2, chi_trick_certificate(u, 4, V))
    y = a_form(DicksonSpec(3, (n0 // 2, (n1 - 1) // 2, (n2 - 1) // 2)), 4)
    line3 = V**spec.a * r.Q(1) * sq(2, y).square()
    c2 = r.congruent("V chi(Sq^4)[...] == V^a Q1 (Sq^2[Q0^(n0/2) Q1^((n1-1)/2) Q2^((n2-1)/2)])^2", line2, line3)

    # the last polynomial, written in Dickson monomials, only has terms handled by C1/C2
    calc = DicksonCalculus(3)
    y_sym = calc.monomial(0, (n0 // 2, (n1 - 1) // 2, (n2 - 1) // 2))
    last_sym = calc.monomial(spec.a, (0, 1, 0)) * calc.sq(2, y_sym).square()
    r.exact("symbolic expansion agrees with the concrete last line", calc.to_concrete(last_sym), line3)
    terms = calc.to_specs(last_sym)
    kinds = sorted({classify(t) for t in terms})
    r.check(
        "every term of the last line has even Q2 exponent or even Q1 exponent",
        all(k in ("C1", "C2") for k in kinds),
        terms=len(terms),
        cases=kinds,
        q2_exponents_even=all(t.exps[2] % 2 == 0 for t in terms),
    )
    c3 = r.hit("last line is hit", line3)
    if c1 is not None and c2 is not None and c3 is not None:
        r.certificate = HitCertificate(c1.terms + c2.terms + c3.terms)
        r.explicit("assembled certificate for A", A, list(r.certificate.terms))
    return MOD_HIT


def _c4(r: _Replay) -> str:
    spec = r.spec
    n0, n1, n2 = spec.exps
    _require(r.n == 3 and n0 % 2 == 0 and spec.a % 2 == 0 and spec.a > 0 and _odd_pair(spec), "C4 needs n=3, n0 even, a even, n1 n2 odd")
    # three-variable Dickson algebra D_3
    q = [dickson_q(3, s) for s in range(4)]
    D = a_form(DicksonSpec(3, (n0, n1, n2)))
    R = a_form(DicksonSpec(3, (n0, n1 - 1, n2 - 1)))
    y = a_form(DicksonSpec(3, (n0 // 2, (n1 - 1) // 2, (n2 - 1) // 2)))
    r.exact("Q0^n0 Q1^n1 Q2^n2 = Q0^n0 Q1^(n1-1) Q2^(n2-1) Sq^4 Q1", D, R * sq(4, q[1]))
    lhs = q[1] * chi_sq(4, R)
    r.exact("Q1 chi(Sq^4)[R] = [Sq^2 Q2][Sq^2 y]^2", lhs, sq(2, q[2]) * sq(2, y).square())
    z = sq(1, sq(2, y))
    line3 = q[2] * z.square()
    r.congruent("[Sq^2 Q2][Sq^2 y]^2 == Q2 (Sq^1 Sq^2 y)^2 within Im(Sq^1..Sq^4)", lhs, line3, max_sq=4)
    q21 = dickson_q(2, 1).embed(3)
    x3 = Polynomial.var(3, 3)
    r.exact("Q_{3,2} = Q_{2,1}^2 + V_3", q[2], q21.square() + v_poly(3))
    u1 = q21 * z.square()
    u2 = (q21 * x3 + x3**3) * z.square()
    r.exact("Q2 (Sq^1 Sq^2 y)^2 = Sq^2(Q_{2,1} z^2) + Sq^1((Q_{2,1} x3 + x3^3) z^2)", line3, sq(2, u1) + sq(1, u2))
    r.congruent("D == Q1 chi(Sq^4)[R] within Im(Sq^1..Sq^4)", D, lhs, max_sq=4)
    cert = _restricted_membership(r, D, "Q0^n0 Q1^n1 Q2^n2 in Im(Sq^1 + ... + Sq^4)")

    V = r.V()
    Va = V**spec.a
    r.check(
        "Sq^i V^a = 0 for i = 1..4",
        all(not sq(i, Va) for i in range(1, 5)),
    )
    r.check(
        "chi(Sq^i) V^a = 0 for i = 1..4",
        all(not chi_sq(i, Va) for i in range(1, 5)),
    )
    A = r.A()
    if cert is not None:
        # A = sum_i V^a Sq^i(h_i) and each term is a chi-trick residue since chi(Sq^i) V^a = 0
        terms: list[tuple[int, Polynomial]] = []
        for i, h in cert.terms:
            terms.extend(chi_trick_certificate(Va, i, h.embed(r.ring)))
        r.certificate = r.explicit("chi-trick certificate for A from the restricted preimage", A, terms)
    r.hit("A is hit (direct solver check)", A)
    return MOD_HIT


def _c5(r: _Replay) -> str:
    spec = r.spec
    n0, n1, n2 = spec.exps
    _require(r.n == 3 and n0 % 2 == 1 and spec.a % 2 == 1 and _odd_pair(spec), "C5 needs n=3, n0 odd, a odd, n1 n2 odd")
    V = r.V()
    u = V ** (spec.a - 1) * sq(7, V)
    A = r.A()
    r.exact("A = V^(a-1) (Sq^7 V) Q0^(n0-1) Q1^n1 Q2^n2", A, u * r.P((n0 - 1, n1, n2)))
    D = a_form(DicksonSpec(3, (n0 - 1, n1, n2)))
    cert = _restricted_membership(r, D, "Q0^(n0-1) Q1^n1 Q2^n2 in Im(Sq^1 + ... + Sq^4)")
    r.check(
        "chi(Sq^i)(V^(a-1) Sq^7 V) = 0 for i = 1..4",
        all(not chi_sq(i, u) for i in range(1, 5)),
    )
    if cert is not None:
        terms: list[tuple[int, Polynomial]] = []
        for i, h in cert.terms:
            terms.extend(chi_trick_certificate(u, i, h.embed(r.ring)))
        r.certificate = r.explicit("chi-trick certificate for A from the restricted preimage", A, terms)
    r.hit("A is hit (direct solver check)", A)
    return MOD_HIT


def doubling_word(a: int) -> tuple[int, int, OperatorWord]:
    """(nu, b, word) with a = 2^nu b, b odd, and word = Sq^(4a) Sq^(2a) ... Sq^(8b)."""
    if a <= 0:
        raise ValueError("a must be positive")
    nu = (a & -a).bit_length() - 1
    b = a >> nu
    indices = [8 * b * 2**j for j in range(nu - 1, -1, -1)]
    return nu, b, OperatorWord.squares(indices)


def _c6(r: _Replay) -> str:
    spec = r.spec
    n0, n1, n2 = spec.exps
    _require(r.n == 3 and n0 % 2 == 1 and spec.a % 2 == 0 and spec.a > 0 and _odd_pair(spec), "C6 needs n=3, n0 odd, a even, n1 n2 odd")
    nu, b, word = doubling_word(spec.a)
    V = r.V()
    r.exact(f"V^a = {word} V^b", V**spec.a, apply_word(word, V**b))
    r.info("doubling decomposition", nu=nu, b=b, word=str(word))

    # iterate the chi-trick through the word, outermost square first
    P = r.P(spec.exps)
    A = r.A()
    current = P
    terms: list[tuple[int, Polynomial]] = []
    inner_words = [OperatorWord(word.factors[j + 1:]) for j in range(len(word.factors))]
    for (kind, k), inner in zip(word.factors, inner_words):
        w = apply_word(inner, V**b)
        terms.extend(chi_trick_certificate(current, k, w))
        current = chi_sq(k, current)
    end = V**b * current
    conj = OperatorWord(tuple((Kind.CHI_SQ, k) for _, k in reversed(word.factors)))
    r.exact("iterated conjugates agree with the word chi(Sq^8b)...chi(Sq^4a)", current, apply_word(conj, P))
    r.congruent("A == V^b chi(Sq^8b) ... chi(Sq^4a)(Q0^n0 Q1^n1 Q2^n2)", A, end)
    r.explicit("explicit chi-trick certificate for A - V^b chi(...)(P)", A + end, terms)

    calc = DicksonCalculus(3)
    sym = calc.apply_word(conj, calc.monomial(0, spec.exps))
    sym = calc.monomial(b, (0, 0, 0)) * sym
    r.exact("symbolic expansion agrees with the concrete polynomial", calc.to_concrete(sym), end)
    kinds = sorted({classify(t) for t in calc.to_specs(sym)})
    r.check(
        "each resulting term belongs to C1, C2, C3 or C5",
        all(k in ("C1", "C2", "C3", "C5") for k in kinds),
        terms=len(sym),
        cases=kinds,
    )
    r.hit("A is hit (direct solver check)", A)
    return EXACT


# -- C7 --------------------------------------------------------------------


def _c7(r: _Replay, rounds: int) -> str:
    spec = r.spec
    n = r.n
    e = list(spec.exps)
    _require(n >= 4 and spec.a >= 1 and e[1] % 2 == 1 and e[2] % 2 == 1, "C7 needs n >= 4, a >= 1, n1 n2 odd")
    top = 2**n - 4
    qn = [dickson_q(n, s) for s in range(n)]
    r.exact(f"Sq^{top} Q_{{{n},1}} = Q_{{{n},1}} Q_{{{n},2}}", sq(top, qn[1]), qn[1] * qn[2])

    rest = e.copy()
    rest[1] -= 1
    rest[2] -= 1
    if spec.degree <= MAX_EXPAND_DEGREE:
        lhs = r.A()
        rhs = r.V() ** spec.a * sq(top, r.Q(1)) * r.P(rest)
        r.exact("A = V^a (Sq^(2^n-4) Q1) Q0^n0 Q1^(n1-1) Q2^(n2-1) ...", lhs, rhs)
    else:
        calc = DicksonCalculus(n)
        lhs = calc.from_spec(spec)
        rhs = calc.monomial(spec.a, rest) * calc.sq(top, calc.monomial(0, _unit(1, n)))
        r.exact("A = V^a (Sq^(2^n-4) Q1) Q0^n0 Q1^(n1-1) Q2^(n2-1) ... (symbolic)", lhs, rhs)
        r.notes.append(
            f"degree {spec.degree} exceeds {MAX_EXPAND_DEGREE}; factorization compared in "
            "the symbol ring F2[V, Q0..Q(n-1)]"
        )

    # the symbolic calculus for level n uses the Sq^i V_{n+1} table; confirm it concretely
    r.check(
        f"Sq^i V_{n + 1} table holds for all i",
        all(check_sq_on_V(n + 1, i).status == EXACT for i in range(2**n + 1)),
    )

    calc = DicksonCalculus(n)
    word = davis_word(n)
    q1 = calc.monomial(0, _unit(1, n))

    def expand(s: DicksonSpec) -> Polynomial:
        base = list(s.exps)
        base[1] -= 1
        base[2] -= 1
        return q1 * calc.apply_word(word, calc.monomial(s.a, base))

    base = list(e)
    base[1] -= 1
    base[2] -= 1
    start = calc.monomial(spec.a, base)
    direct = calc.chi_sq(top, start)
    composite = calc.apply_word(word, start)
    r.steps.append(
        Step(
            f"chi(Sq^{top}) vs {word} on V^a Q0^n0 Q1^(n1-1) Q2^(n2-1) ...",
            EXACT if direct == composite else INFO,
            {"equal": direct == composite, "terms": len(direct)},
        )
    )

    # follow the terms whose Q1 and Q2 exponents stay odd through repeated expansion
    frontier = {spec}
    history = []
    fixed_point = False
    for _ in range(rounds):
        counts = {"C1": 0, "C2": 0, "C7": 0}
        nxt: set[DicksonSpec] = set()
        total: set = set()
        for s in frontier:
            total.symmetric_difference_update(expand(s).terms)
        for m in sorted(total):
            t = DicksonSpec(n, m[1:], m[0])
            kind = classify(t)
            counts[kind] = counts.get(kind, 0) + 1
            if kind == "C7":
                nxt.add(t)
        history.append(counts)
        if nxt == frontier:
            fixed_point = True
            break
        frontier = nxt
        if not frontier:
            break
    r.info(
        "expansion rounds (terms per case; C7 terms are expanded again)",
        rounds=history,
        open_terms=len(frontier),
        fixed_point=fixed_point,
        open=[t.label() for t in sorted(frontier, key=lambda t: (t.a, t.exps))],
    )
    if fixed_point:
        r.notes.append(
            "the expansion maps the open term(s) to themselves, so the congruence "
            "A == Q1 Sq^8 chi(Sq^4)(...) gives no reduction here; hitness of A rests on "
            "the direct solver check"
        )
    r.notes.append(
        "termination of the repeated expansion is not replayed symbolically; coverage is empirical"
    )
    _c7_direct(r)
    return EXACT


def _c7_direct(r: _Replay) -> None:
    from math import comb

    cols = comb(r.spec.degree + r.ring - 1, r.ring - 1)
    if cols > r.solver.limits.max_columns:
        r.steps.append(
            Step(
                "A is hit (direct solver check)",
                CEILING,
                {"columns": cols, "max_columns": r.solver.limits.max_columns},
            )
        )
        return
    r.hit("A is hit (direct solver check)", r.A())


def _unit(k: int, n: int) -> tuple[int, ...]:
    e = [0] * n
    e[k] = 1
    return tuple(e)


_HANDLERS: dict[str, Callable[[_Replay], str]] = {
    "C1": _c1,
    "C2": _c2,
    "C3": _c3,
    "C4": _c4,
    "C5": _c5,
    "C6": _c6,
}


def replay_case(
    case_id: str,
    spec: DicksonSpec,
    *,
    solver: HitSolver | None = None,
    rounds: int = 3,
) -> ReplayReport:
    if case_id not in CASES:
        raise ValueError(f"unknown case {case_id!r}; expected one of {', '.join(CASES)}")
    t0 = time.perf_counter()
    r = _Replay(case_id, spec, solver or HitSolver())
    headline = _c7(r, rounds) if case_id == "C7" else _HANDLERS[case_id](r)
    return r.report(headline, t0)


def replay_grid(max_a: int = 2, max_exp: int = 2) -> Iterator[tuple[str, DicksonSpec]]:
    """Every (case, spec) with 1 <= a <= max_a and exponents <= max_exp.

    n = 3 for C1 to C6, n = 4 for C7.
    """
    for a in range(1, max_a + 1):
        for exps in itertools.product(range(max_exp + 1), repeat=3):
            spec = DicksonSpec(3, exps, a)
            yield classify(spec), spec
    for a in range(1, max_a + 1):
        for exps in itertools.product(range(max_exp + 1), repeat=4):
            if exps[1] % 2 and exps[2] % 2:
                yield "C7", DicksonSpec(4, exps, a)


def grid_order(item: tuple[str, DicksonSpec]) -> tuple:
    case, spec = item
    return (case, spec.n, spec.a, spec.exps)
