"""Steenrod action on F2[V_{n+1}, Q_{n,0}, ..., Q_{n,n-1}] by table lookup.

V_{n+1} and the Q_{n,s} are algebraically independent, so a polynomial in
these symbols is faithfully an ordinary F2 polynomial in n+1 "variables":
coordinate 0 is the exponent of V_{n+1}, coordinate 1+s that of Q_{n,s}.
Squares act on the symbols through the tabulated formulas (checked
concretely by :mod:`dicksonhit.verify.tables`) and on products through the
Cartan formula.  This keeps expansions in five variables tractable where
concrete polynomials run to millions of terms.
"""

from __future__ import annotations

from ..dickson import DicksonSpec, dickson_q, v_poly
from ..f2poly import Monomial, Polynomial
from .tables import predicted_sq_on_Q_exps, predicted_sq_on_V_exps


class DicksonCalculus:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.nsym = n + 1
        self.weights = (2**n,) + tuple(2**n - 2**s for s in range(n))
        self._gen: dict[tuple[int, int], Polynomial] = {}
        self._power: dict[tuple[int, int], dict[int, Polynomial]] = {}
        self._mono: dict[tuple[int, Monomial], Polynomial] = {}

    # symbols --------------------------------------------------------------

    def one(self) -> Polynomial:
        return Polynomial.one(self.nsym)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.nsym)

    def monomial(self, a: int, exps) -> Polynomial:
        return Polynomial.monomial((a,) + tuple(exps))

    def from_spec(self, spec: DicksonSpec) -> Polynomial:
        if spec.n != self.n:
            raise ValueError(f"spec is for n={spec.n}, calculus for n={self.n}")
        return self.monomial(spec.a, spec.exps)

    def to_specs(self, p: Polynomial) -> list[DicksonSpec]:
        return [DicksonSpec(self.n, m[1:], m[0]) for m in p.sorted_terms()]

    def weight(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, m))

    def to_concrete(self, p: Polynomial, nvars: int | None = None) -> Polynomial:
        ring = self.n + 1 if nvars is None else nvars
        images = [v_poly(self.n + 1).embed(ring)] + [
            dickson_q(self.n, s).embed(ring) for s in range(self.n)
        ]
        return p.substitute(images)

    # Steenrod action -----------------------------------------------------

    def _exps_to_poly(self, rows: list[tuple[int, ...]]) -> Polynomial:
        return Polynomial(self.nsym, rows)

    def sq_generator(self, j: int, g: int) -> Polynomial:
        key = (j, g)
        if key not in self._gen:
            if g == 0:
                rows = predicted_sq_on_V_exps(self.n + 1, j)
                # (V exponent, Q_{n,*} exponents)
                terms = [(v,) + q for v, q in rows]
            else:
                terms = [(0,) + q for q in predicted_sq_on_Q_exps(self.n, g - 1, j)]
            self._gen[key] = self._exps_to_poly(terms)
        return self._gen[key]

    def _sq_power(self, g: int, e: int) -> dict[int, Polynomial]:
        """Every nonzero Sq^j(g^e), keyed by j."""
        key = (g, e)
        if key in self._power:
            return self._power[key]
        if e == 0:
            out = {0: self.one()}
        elif e == 1:
            top = self.weights[g]
            out = {j: p for j in range(top + 1) if (p := self.sq_generator(j, g))}
        elif e % 2 == 0:
            # Sq(x^2) = Sq(x)^2
            out = {2 * j: p.square() for j, p in self._sq_power(g, e // 2).items()}
        else:
            out = _convolve(self._sq_power(g, e - 1), self._sq_power(g, 1), None)
        self._power[key] = out
        return out

    def sq_monomial(self, j: int, m: Monomial) -> Polynomial:
        key = (j, m)
        if key in self._mono:
            return self._mono[key]
        if j > self.weight(m):
            result = self.zero()
        else:
            acc: dict[int, Polynomial] = {0: self.one()}
            for g, e in enumerate(m):
                if e:
                    acc = _convolve(acc, self._sq_power(g, e), j)
            result = acc.get(j, self.zero())
        self._mono[key] = result
        return result

    def sq(self, j: int, p: Polynomial) -> Polynomial:
        if j == 0:
            return p
        acc = set()
        for m in p.terms:
            acc.symmetric_difference_update(self.sq_monomial(j, m).terms)
        return Polynomial._raw(self.nsym, frozenset(acc))

    def chi_sq(self, k: int, p: Polynomial) -> Polynomial:
        values = [p]
        for m in range(1, k + 1):
            acc = self.zero()
            for j in range(1, m + 1):
                if values[m - j]:
                    acc = acc + self.sq(j, values[m - j])
            values.append(acc)
        return values[k]

    def apply_word(self, word, p: Polynomial) -> Polynomial:
        from ..steenrod import Kind

        for kind, i in reversed(word.factors):
            if not p:
                break
            p = self.sq(i, p) if kind is Kind.SQ else self.chi_sq(i, p)
        return p


def _convolve(
    left: dict[int, Polynomial], right: dict[int, Polynomial], cap: int | None
) -> dict[int, Polynomial]:
    out: dict[int, Polynomial] = {}
    for a, pa in left.items():
        for b, pb in right.items():
            if cap is not None and a + b > cap:
                continue
            prod = pa * pb
            if a + b in out:
                out[a + b] = out[a + b] + prod
            else:
                out[a + b] = prod
    return {k: v for k, v in out.items() if v}
