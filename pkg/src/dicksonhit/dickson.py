"""Dickson invariants, the products V_n, and the A-form monomials.

``dickson_q`` follows the recursion Q_{n+1,k} = Q_{n,k-1}^2 + V_{n+1} Q_{n,k}
(with Q_{n,-1} = 0 and Q_{n,n} = 1).  ``dickson_q_oracle`` is an independent
route: it expands prod_{v in F2^n} (T + v.x) and reads off the coefficient of
T^(2^s).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .f2poly import Polynomial, iter_bits, monomials_of_degree, to_vector


@lru_cache(maxsize=None)
def v_poly(n: int) -> Polynomial:
    """V_n: product of all linear forms a1 x1 + ... + a_{n-1} x_{n-1} + x_n."""
    if n < 1:
        raise ValueError("V_n needs n >= 1")
    xs = [Polynomial.var(n, k) for k in range(1, n + 1)]
    result = Polynomial.one(n)
    for alpha in itertools.product((0, 1), repeat=n - 1):
        form = xs[n - 1]
        for a, x in zip(alpha, xs):
            if a:
                form = form + x
        result = result * form
    return result


@lru_cache(maxsize=None)
def dickson_q(n: int, s: int) -> Polynomial:
    if n < 1 or not 0 <= s <= n:
        raise ValueError(f"Q_{{{n},{s}}} is undefined (need 0 <= s <= n, n >= 1)")
    if s == n:
        return Polynomial.one(n)
    if n == 1:
        return Polynomial.var(1, 1)
    lower = dickson_q(n - 1, s).embed(n)
    term = v_poly(n) * lower
    if s >= 1:
        term = term + dickson_q(n - 1, s - 1).embed(n).square()
    return term


@lru_cache(maxsize=None)
def _oracle_coefficients(n: int) -> dict[int, Polynomial]:
    # the auxiliary variable T is the last coordinate and is stripped before returning
    ring = n + 1
    t = Polynomial.var(ring, ring)
    xs = [Polynomial.var(ring, k) for k in range(1, n + 1)]
    prod = Polynomial.one(ring)
    for v in itertools.product((0, 1), repeat=n):
        form = t
        for bit, x in zip(v, xs):
            if bit:
                form = form + x
        prod = prod * form
    coeffs: dict[int, set] = {}
    for m in prod.terms:
        coeffs.setdefault(m[-1], set()).add(m[:-1])
    return {e: Polynomial(n, terms) for e, terms in coeffs.items()}


def dickson_q_oracle(n: int, s: int) -> Polynomial:
    if n < 1 or not 0 <= s <= n:
        raise ValueError(f"Q_{{{n},{s}}} is undefined (need 0 <= s <= n, n >= 1)")
    return _oracle_coefficients(n).get(2**s, Polynomial.zero(n))


def oracle_extra_powers(n: int) -> list[int]:
    """T-exponents in the oracle product that are not powers of two (should be empty)."""
    return sorted(e for e, c in _oracle_coefficients(n).items() if c and e & (e - 1))


def dickson_degree(n: int, s: int) -> int:
    return 2**n - 2**s


@dataclass(frozen=True)
class DicksonSpec:
    """V_{n+1}^a * prod_s Q_{n,s}^{exps[s]}; with a = 0 a plain D_n monomial."""

    n: int
    exps: tuple[int, ...]
    a: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(self.exps) != self.n:
            raise ValueError(f"need {self.n} Dickson exponents, got {len(self.exps)}")
        if self.a < 0 or any(e < 0 for e in self.exps):
            raise ValueError("exponents must be non-negative")

    @property
    def degree(self) -> int:
        n = self.n
        return self.a * 2**n + sum(e * (2**n - 2**s) for s, e in enumerate(self.exps))

    @property
    def nvars(self) -> int:
        return self.n + 1 if self.a else self.n

    def with_exps(self, **changes: int) -> "DicksonSpec":
        """Copy with some exponents replaced; keys are ``a`` or ``n0``, ``n1``, ..."""
        exps = list(self.exps)
        a = self.a
        for key, value in changes.items():
            if key == "a":
                a = value
            else:
                exps[int(key[1:])] = value
        return DicksonSpec(self.n, tuple(exps), a)

    def label(self) -> str:
        parts = [f"V{self.n + 1}^{self.a}"] if self.a else []
        parts += [f"Q{self.n},{s}^{e}" for s, e in enumerate(self.exps) if e]
        return "*".join(parts) or "1"


def a_form(spec: DicksonSpec, nvars: int | None = None) -> Polynomial:
    ring = spec.nvars if nvars is None else nvars
    if ring < spec.nvars:
        raise ValueError(f"{spec.label()} needs {spec.nvars} variables")
    result = Polynomial.one(ring)
    for s, e in enumerate(spec.exps):
        if e:
            result = result * dickson_q(spec.n, s).embed(ring) ** e
    if spec.a:
        result = result * v_poly(spec.n + 1).embed(ring) ** spec.a
    return result


def gl_invariance_check(n: int, p: Polynomial) -> bool:
    """Whether p is fixed by a generating set of GL(n, F2)."""
    if p.nvars != n:
        raise ValueError(f"polynomial has {p.nvars} variables, expected {n}")
    if n == 1:
        return True
    xs = [Polynomial.var(n, k) for k in range(1, n + 1)]
    swap = [xs[1], xs[0]] + xs[2:]
    cycle = xs[1:] + xs[:1]
    transvection = [xs[0] + xs[1]] + xs[1:]
    return all(p.substitute(images) == p for images in (swap, cycle, transvection))


def enumerate_dickson_monomials(n: int, d: int) -> list[DicksonSpec]:
    """Every Q-exponent tuple of total degree d, lexicographic in (e_0, ..., e_{n-1})."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    degs = [2**n - 2**s for s in range(n)]
    found: list[tuple[int, ...]] = []

    def walk(s: int, remaining: int, acc: list[int]) -> None:
        if s == n:
            if remaining == 0:
                found.append(tuple(acc))
            return
        for e in range(remaining // degs[s] + 1):
            acc.append(e)
            walk(s + 1, remaining - e * degs[s], acc)
            acc.pop()

    walk(0, d, [])
    return [DicksonSpec(n, exps) for exps in sorted(found)]


def dickson_decompose(p: Polynomial, n: int) -> list[tuple[int, ...]] | None:
    """Write a homogeneous p in n variables as a sum of Dickson monomials.

    Returns the exponent tuples of the summands, or None when p is not in D_n.
    """
    if p.nvars != n:
        raise ValueError(f"polynomial has {p.nvars} variables, expected {n}")
    if not p:
        return []
    if not p.is_homogeneous():
        raise ValueError("dickson_decompose needs a homogeneous polynomial")
    d = p.degree
    basis = monomials_of_degree(n, d)
    specs = enumerate_dickson_monomials(n, d)
    ncols = len(basis)
    pivots: dict[int, int] = {}
    for slot, spec in enumerate(specs):
        row = to_vector(a_form(spec), basis) | (1 << (ncols + slot))
        while row & ((1 << ncols) - 1):
            low = (row & -row).bit_length() - 1
            if low not in pivots:
                pivots[low] = row
                break
            row ^= pivots[low]
    v = to_vector(p, basis)
    while v & ((1 << ncols) - 1):
        low = (v & -v).bit_length() - 1
        if low not in pivots:
            return None
        v ^= pivots[low]
    return [specs[k].exps for k in iter_bits(v >> ncols)]


__all__ = [
    "DicksonSpec",
    "a_form",
    "dickson_decompose",
    "dickson_degree",
    "dickson_q",
    "dickson_q_oracle",
    "enumerate_dickson_monomials",
    "gl_invariance_check",
    "oracle_extra_powers",
    "v_poly",
]
