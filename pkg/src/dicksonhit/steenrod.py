"""Steenrod squares and their conjugates acting on F2[x1, ..., xn].

On one variable ``Sq^k(x^e) = C(e, k) x^(e+k)`` and ``C(e, k)`` is odd exactly
when the bits of ``k`` are a subset of the bits of ``e``.  A monomial is
handled variable by variable, distributing ``i`` over the variables in every
admissible way; distinct distributions give distinct monomials, so there is no
cancellation inside the image of a single monomial.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .f2poly import Monomial, Polynomial, VariableCountMismatch


@lru_cache(maxsize=4096)
def _submasks(e: int) -> tuple[int, ...]:
    """All k with C(e, k) odd, ascending."""
    out = []
    s = e
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & e
    return tuple(reversed(out))


def binomial_mod2(e: int, k: int) -> int:
    return 1 if 0 <= k <= e and (k & ~e) == 0 else 0


def sq_monomial(i: int, m: Monomial) -> list[Monomial]:
    """Support of Sq^i applied to a single monomial."""
    if i == 0:
        return [m]
    n = len(m)
    if i > sum(m):
        return []
    # tail[j] = exponent budget still available from variable j onwards
    tail = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        tail[j] = tail[j + 1] + m[j]
    out: list[Monomial] = []
    prefix = [0] * n

    def walk(j: int, remaining: int) -> None:
        e = m[j]
        if j == n - 1:
            if (remaining & ~e) == 0:
                prefix[j] = e + remaining
                out.append(tuple(prefix))
            return
        for k in _submasks(e):
            if k > remaining:
                break
            if remaining - k > tail[j + 1]:
                continue
            prefix[j] = e + k
            walk(j + 1, remaining - k)

    walk(0, i)
    return out


def sq(i: int, p: Polynomial) -> Polynomial:
    """Sq^i(p); linear in p, so mixed-degree input is handled termwise."""
    if i < 0:
        raise ValueError("Steenrod squares have non-negative index")
    if i == 0:
        return p
    acc: set = set()
    for m in p.terms:
        acc.symmetric_difference_update(sq_monomial(i, m))
    return Polynomial._raw(p.nvars, frozenset(acc))


def chi_sq_sequence(k: int, p: Polynomial) -> list[Polynomial]:
    """``[chi(Sq^0) p, chi(Sq^1) p, ..., chi(Sq^k) p]``.

    Uses chi(Sq^m) = sum_{j=1..m} Sq^j chi(Sq^(m-j)); every intermediate value
    is kept, so the whole sequence costs O(k^2) squares.
    """
    values = [p]
    for m in range(1, k + 1):
        acc: set = set()
        for j in range(1, m + 1):
            prev = values[m - j]
            if prev:
                acc.symmetric_difference_update(sq(j, prev).terms)
        values.append(Polynomial._raw(p.nvars, frozenset(acc)))
    return values


def chi_sq(i: int, p: Polynomial) -> Polynomial:
    if i < 0:
        raise ValueError("Steenrod squares have non-negative index")
    return chi_sq_sequence(i, p)[i]


class Kind(enum.Enum):
    SQ = "Sq"
    CHI_SQ = "Chi"


@dataclass(frozen=True)
class OperatorWord:
    """A composite of Sq^i and chi(Sq^i); the leftmost factor acts last."""

    factors: tuple[tuple[Kind, int], ...] = ()

    def __post_init__(self) -> None:
        for kind, i in self.factors:
            if not isinstance(kind, Kind) or i < 0:
                raise ValueError(f"bad operator factor {(kind, i)}")

    @classmethod
    def of(cls, *factors: tuple[Kind | str, int]) -> "OperatorWord":
        return cls(tuple((Kind(k) if isinstance(k, str) else k, int(i)) for k, i in factors))

    @classmethod
    def squares(cls, indices: Sequence[int]) -> "OperatorWord":
        return cls(tuple((Kind.SQ, i) for i in indices))

    @property
    def degree(self) -> int:
        return sum(i for _, i in self.factors)

    def __str__(self) -> str:
        return "Word[" + ", ".join(f"{k.value} {i}" for k, i in self.factors) + "]"


def apply_word(w: OperatorWord, p: Polynomial) -> Polynomial:
    for kind, i in reversed(w.factors):
        if not p:
            break
        p = sq(i, p) if kind is Kind.SQ else chi_sq(i, p)
    return p


def chi_trick_residue(u: Polynomial, k: int, v: Polynomial) -> Polynomial:
    """u Sq^k(v) + chi(Sq^k)(u) v, which always lies in the hit subspace."""
    if u.nvars != v.nvars:
        raise VariableCountMismatch("chi-trick operands live in different rings")
    return u * sq(k, v) + chi_sq(k, u) * v


def chi_trick_certificate(u: Polynomial, k: int, v: Polynomial) -> list[tuple[int, Polynomial]]:
    """Explicit preimage of the chi-trick residue.

    u Sq^k(v) + chi(Sq^k)(u) v = sum_{i=1..k} Sq^i(chi(Sq^(k-i))(u) v), a
    consequence of the Cartan formula and the antipode relation.
    """
    if u.nvars != v.nvars:
        raise VariableCountMismatch("chi-trick operands live in different rings")
    chis = chi_sq_sequence(k, u)
    terms = []
    for i in range(1, k + 1):
        w = chis[k - i] * v
        if w:
            terms.append((i, w))
    return terms
