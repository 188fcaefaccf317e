"""Deciding whether a homogeneous polynomial is hit.

The degree-d hit subspace is spanned by Sq^i(m) for 1 <= i <= d // 2 and m a
monomial of degree d - i (larger i vanish by instability).  Generator images
are inserted, in canonical order, into an echelon basis of int bitsets.

Every row carries its preimage in the bits above the coordinate columns.
Those bits index *slots*: the generators that created a pivot.  A generator
that reduces to zero is dropped, so the tracking part never outgrows the rank.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Union

from .f2poly import (
    GradedBasis,
    Monomial,
    Polynomial,
    from_vector,
    iter_bits,
    monomials_of_degree,
    to_vector,
)
from .steenrod import sq, sq_monomial

log = logging.getLogger(__name__)


class ResourceCeilingExceeded(RuntimeError):
    """A configured solver limit was hit; not a mathematical answer."""


@dataclass(frozen=True)
class SolverLimits:
    max_columns: int = 20_000
    max_generators: int = 400_000
    max_degree: int = 256


DEFAULT_LIMITS = SolverLimits()


@dataclass(frozen=True)
class HitCertificate:
    """f = sum of Sq^i(u_i) over ``terms``."""

    terms: tuple[tuple[int, Polynomial], ...]
    hit = True

    def evaluate(self, nvars: int) -> Polynomial:
        acc: set = set()
        for i, u in self.terms:
            acc.symmetric_difference_update(sq(i, u).terms)
        return Polynomial._raw(nvars, frozenset(acc))


@dataclass(frozen=True)
class NonHitWitness:
    """Coordinates of f left over after reduction against the hit space."""

    residual: int
    basis: GradedBasis
    hit = False

    @property
    def residual_polynomial(self) -> Polynomial:
        return from_vector(self.residual, self.basis)


HitResult = Union[HitCertificate, NonHitWitness]


def generator_count(n: int, d: int, max_sq: int | None = None) -> int:
    from math import comb

    top = d // 2 if max_sq is None else min(d // 2, max_sq)
    return sum(comb(d - i + n - 1, n - 1) for i in range(1, top + 1))


def _generator_images(n: int, d: int, i: int, index: dict) -> list[int]:
    out = []
    for m in monomials_of_degree(n, d - i).monomials:
        v = 0
        for r in sq_monomial(i, m):
            v ^= 1 << index[r]
        out.append(v)
    return out


def _images_job(args: tuple[int, int, int]) -> list[int]:
    n, d, i = args
    return _generator_images(n, d, i, monomials_of_degree(n, d).index)


@dataclass
class ReducedBasis:
    """Reduced row-echelon basis of the degree-d hit subspace.

    ``rows`` maps pivot column -> combined row (coordinates in the low
    ``len(columns)`` bits, slot combination above them).  ``slots[k]`` is
    the generator (i, m) owning tracking bit k.
    """

    nvars: int
    degree: int
    max_sq: int | None
    columns: GradedBasis
    rows: dict[int, int] = field(default_factory=dict)
    slots: list[tuple[int, Monomial]] = field(default_factory=list)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def coordinates(self, pivot: int) -> int:
        return self.rows[pivot] & ((1 << self.ncols) - 1)

    def preimage_of_slots(self, track: int) -> tuple[tuple[int, Polynomial], ...]:
        grouped: dict[int, set] = {}
        for k in iter_bits(track):
            i, m = self.slots[k]
            grouped.setdefault(i, set()).symmetric_difference_update({m})
        return tuple(
            (i, Polynomial._raw(self.nvars, frozenset(ms)))
            for i, ms in sorted(grouped.items())
            if ms
        )

    def preimage(self, pivot: int) -> tuple[tuple[int, Polynomial], ...]:
        return self.preimage_of_slots(self.rows[pivot] >> self.ncols)

    def reduce(self, v: int) -> tuple[int, int]:
        """Reduce coordinate vector v; returns (residual, slot combination)."""
        acc = 0
        for col in iter_bits(v):
            row = self.rows.get(col)
            if row is not None:
                acc ^= row
        mask = (1 << self.ncols) - 1
        return (v ^ acc) & mask, acc >> self.ncols

    def decide(self, f: Polynomial) -> HitResult:
        if f.nvars != self.nvars:
            raise ValueError(f"basis is for {self.nvars} variables, polynomial has {f.nvars}")
        residual, track = self.reduce(to_vector(f, self.columns))
        if residual:
            return NonHitWitness(residual, self.columns)
        return HitCertificate(self.preimage_of_slots(track))


def hit_space_basis(
    n: int,
    d: int,
    *,
    max_sq: int | None = None,
    limits: SolverLimits = DEFAULT_LIMITS,
    workers: int = 1,
) -> ReducedBasis:
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    if d > limits.max_degree:
        raise ResourceCeilingExceeded(f"degree {d} exceeds max_degree={limits.max_degree}")
    from math import comb

    ncols = comb(d + n - 1, n - 1)
    if ncols > limits.max_columns:
        raise ResourceCeilingExceeded(
            f"degree {d} in {n} variables has {ncols} columns (max_columns={limits.max_columns})"
        )
    ngen = generator_count(n, d, max_sq)
    if ngen > limits.max_generators:
        raise ResourceCeilingExceeded(
            f"{ngen} generators exceed max_generators={limits.max_generators}"
        )

    columns = monomials_of_degree(n, d)
    basis = ReducedBasis(n, d, max_sq, columns)
    top = d // 2 if max_sq is None else min(d // 2, max_sq)
    ops = list(range(1, top + 1))
    if workers > 1 and len(ops) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            image_lists = list(pool.map(_images_job, [(n, d, i) for i in ops]))
    else:
        index = columns.index
        image_lists = (_generator_images(n, d, i, index) for i in ops)

    mask = (1 << ncols) - 1
    pivots = basis.rows
    for i, images in zip(ops, image_lists):
        for m, v in zip(monomials_of_degree(n, d - i).monomials, images):
            while v:
                low = (v & -v).bit_length() - 1
                row = pivots.get(low)
                if row is None:
                    slot = len(basis.slots)
                    basis.slots.append((i, m))
                    pivots[low] = v ^ (1 << (ncols + slot))
                    break
                v ^= row
                if not v & mask:
                    break
    _back_substitute(pivots, mask)
    log.debug("hit space n=%d d=%d: rank %d of %d", n, d, basis.rank, ncols)
    return basis


def _back_substitute(pivots: dict[int, int], mask: int) -> None:
    # rows only carry columns >= their pivot; clear pivot columns above it
    done: dict[int, int] = {}
    for p in sorted(pivots, reverse=True):
        v = pivots[p]
        w = (v & mask) >> (p + 1)
        base = p + 1
        while w:
            low = (w & -w).bit_length() - 1
            col = base + low
            row = done.get(col)
            if row is not None:
                v ^= row
                # done rows have no pivot bits besides col, and only bits > col
                w = (v & mask) >> (col + 1)
                base = col + 1
            else:
                w ^= 1 << low
        done[p] = v
    pivots.update(done)


class HitSolver:
    """Answers hit queries, keeping one basis per (n, d, max_sq)."""

    def __init__(
        self,
        limits: SolverLimits = DEFAULT_LIMITS,
        *,
        workers: int = 1,
        cache_dir=None,
    ):
        self.limits = limits
        self.workers = workers
        self.cache_dir = cache_dir
        self._bases: dict[tuple[int, int, int | None], ReducedBasis] = {}

    def basis(self, n: int, d: int, max_sq: int | None = None) -> ReducedBasis:
        key = (n, d, max_sq)
        found = self._bases.get(key)
        if found is not None:
            return found
        if self.cache_dir is not None:
            from .cache import cache_load, cache_store

            found = cache_load(n, d, self.cache_dir, max_sq=max_sq)
            if found is None:
                found = hit_space_basis(
                    n, d, max_sq=max_sq, limits=self.limits, workers=self.workers
                )
                cache_store(found, self.cache_dir)
        else:
            found = hit_space_basis(n, d, max_sq=max_sq, limits=self.limits, workers=self.workers)
        self._bases[key] = found
        return found

    def is_hit(self, f: Polynomial, *, max_sq: int | None = None) -> HitResult:
        """Hit certificate or non-hit witness for f.

        Mixed-degree input is split; the certificate is the concatenation of
        the parts' certificates and the first non-hit part is reported.
        """
        terms: list[tuple[int, Polynomial]] = []
        for d, part in f.homogeneous_parts().items():
            if d == 0:
                # constants are never hit: every Sq^i with i >= 1 raises degree
                return NonHitWitness(1, monomials_of_degree(f.nvars, 0))
            result = self.basis(f.nvars, d, max_sq).decide(part)
            if not result.hit:
                return result
            terms.extend(result.terms)
        return HitCertificate(tuple(terms))


_default_solver = HitSolver()


def is_hit(f: Polynomial, *, max_sq: int | None = None, solver: HitSolver | None = None) -> HitResult:
    return (solver or _default_solver).is_hit(f, max_sq=max_sq)


def verify_certificate(f: Polynomial, cert: HitCertificate) -> bool:
    """Recompute sum Sq^i(u_i) from scratch and compare with f."""
    if any(i < 1 for i, _ in cert.terms):
        return False
    if any(u.nvars != f.nvars for _, u in cert.terms):
        return False
    return cert.evaluate(f.nvars) == f
