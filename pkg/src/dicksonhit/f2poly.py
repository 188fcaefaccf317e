"""Polynomials over the two-element field.

A monomial is a plain tuple of non-negative exponents, one per variable.  A
:class:`Polynomial` is an immutable set of such tuples (coefficients are 0 or
1, so the support *is* the polynomial).

The canonical monomial order is graded: lower total degree first, and within
one degree the exponent vectors run in descending lexicographic order, so
``x1^2 < x1*x2 < x2^2``.  Graded bases and coordinate vectors use this order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Sequence

Monomial = tuple[int, ...]


class VariableCountMismatch(ValueError):
    pass


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_key(m: Monomial) -> tuple:
    """Sort key realising the canonical graded order."""
    return (sum(m), tuple(-e for e in m))


def _compositions(n: int, d: int) -> Iterator[Monomial]:
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


class Polynomial:
    """An element of F2[x1, ..., xn]."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Iterable[Sequence[int]] = ()):
        if nvars < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        support: set[Monomial] = set()
        for t in terms:
            m = tuple(int(e) for e in t)
            if len(m) != nvars:
                raise VariableCountMismatch(
                    f"monomial {m} does not have {nvars} exponents"
                )
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            # repeated monomials cancel in characteristic 2
            support ^= {m}
        self.nvars = nvars
        self.terms = frozenset(support)
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: frozenset) -> "Polynomial":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, frozenset())

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, frozenset({(0,) * nvars}))

    @classmethod
    def var(cls, nvars: int, k: int) -> "Polynomial":
        """The variable x_k (1-based)."""
        if not 1 <= k <= nvars:
            raise IndexError(f"x{k} is not a variable of a {nvars}-variable ring")
        m = [0] * nvars
        m[k - 1] = 1
        return cls._raw(nvars, frozenset({tuple(m)}))

    @classmethod
    def monomial(cls, exponents: Sequence[int]) -> "Polynomial":
        return cls(len(exponents), [exponents])

    # -- basic protocol ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.terms))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {str(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms, key=monomial_key)

    # -- grading ----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Largest total degree in the support, -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "Polynomial"]:
        parts: dict[int, set] = {}
        for m in self.terms:
            parts.setdefault(sum(m), set()).add(m)
        return {
            d: Polynomial._raw(self.nvars, frozenset(s))
            for d, s in sorted(parts.items())
        }

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise VariableCountMismatch(
                f"cannot combine polynomials in {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.one(self.nvars) if other % 2 else Polynomial.zero(self.nvars)
        self._check(other)
        return Polynomial._raw(self.nvars, self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if isinstance(other, int):
            return self if other % 2 else Polynomial.zero(self.nvars)
        self._check(other)
        if other is self or other.terms == self.terms:
            return self.square()
        return Polynomial._raw(self.nvars, _packed_product(self.nvars, self.terms, other.terms))

    __rmul__ = __mul__

    def square(self) -> "Polynomial":
        """Frobenius: squaring doubles every exponent, cross terms cancel."""
        return Polynomial._raw(
            self.nvars, frozenset(tuple(2 * e for e in m) for m in self.terms)
        )

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base.square()
        return result

    # -- variable changes -------------------------------------------------

    def embed(self, nvars: int) -> "Polynomial":
        """Regard the polynomial as living in more variables (zero-padded)."""
        if nvars < self.nvars:
            raise VariableCountMismatch(f"cannot embed {self.nvars} variables into {nvars}")
        if nvars == self.nvars:
            return self
        pad = (0,) * (nvars - self.nvars)
        return Polynomial._raw(nvars, frozenset(m + pad for m in self.terms))

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace x_k by ``images[k-1]``; all images share one ring."""
        if len(images) != self.nvars:
            raise VariableCountMismatch(
                f"need {self.nvars} substitution images, got {len(images)}"
            )
        target = images[0].nvars
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(j: int, e: int) -> Polynomial:
            key = (j, e)
            if key not in powers:
                powers[key] = images[j] ** e
            return powers[key]

        acc: set = set()
        for m in self.terms:
            term = Polynomial.one(target)
            for j, e in enumerate(m):
                if e:
                    term = term * power(j, e)
                    if not term:
                        break
            acc ^= term.terms
        return Polynomial._raw(target, frozenset(acc))


def _packed_product(nvars: int, left: frozenset, right: frozenset) -> frozenset:
    if not left or not right:
        return frozenset()
    if len(left) > len(right):
        left, right = right, left
    top = max(max(m) for m in left) + max(max(m) for m in right)
    width = max(top.bit_length(), 1)
    shifts = [width * j for j in range(nvars)]

    def pack(m: Monomial) -> int:
        return sum(e << s for e, s in zip(m, shifts))

    packed_right = [pack(m) for m in right]
    counts: Counter = Counter()
    for m in left:
        a = pack(m)
        counts.update(a + b for b in packed_right)
    mask = (1 << width) - 1
    return frozenset(
        tuple((key >> s) & mask for s in shifts)
        for key, c in counts.items()
        if c & 1
    )


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def format_monomial(m: Monomial) -> str:
    factors = []
    for k, e in enumerate(m, start=1):
        if e == 1:
            factors.append(f"x{k}")
        elif e > 1:
            factors.append(f"x{k}^{e}")
    return "*".join(factors) if factors else "1"


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form, re-readable by the expression parser."""
    if not p.terms:
        return "0"
    return " + ".join(format_monomial(m) for m in p.sorted_terms())


@dataclass(frozen=True)
class GradedBasis:
    """All monomials of one degree, in canonical order."""

    nvars: int
    degree: int
    monomials: tuple[Monomial, ...]

    @cached_property
    def index(self) -> dict[Monomial, int]:
        return {m: k for k, m in enumerate(self.monomials)}

    def __len__(self) -> int:
        return len(self.monomials)


def monomials_of_degree(n: int, d: int) -> GradedBasis:
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    mons = tuple(_compositions(n, d))
    assert len(mons) == comb(d + n - 1, n - 1)
    return GradedBasis(n, d, mons)


def to_vector(p: Polynomial, basis: GradedBasis) -> int:
    """Coordinates of ``p`` as an int bitset: bit k is the k-th basis monomial."""
    if p.nvars != basis.nvars:
        raise VariableCountMismatch(f"basis has {basis.nvars} variables, polynomial {p.nvars}")
    index = basis.index
    v = 0
    for m in p.terms:
        k = index.get(m)
        if k is None:
            raise ValueError(
                f"monomial {format_monomial(m)} is not of degree {basis.degree}"
            )
        v |= 1 << k
    return v


def from_vector(v: int, basis: GradedBasis) -> Polynomial:
    if v < 0 or v >> len(basis.monomials):
        raise ValueError("bit vector does not fit the basis")
    mons = basis.monomials
    return Polynomial._raw(basis.nvars, frozenset(mons[k] for k in iter_bits(v)))


def iter_bits(v: int) -> Iterator[int]:
    """Positions of the set bits of ``v``, lowest first."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low

