import pytest
from hypothesis import given, strategies as st

from conftest import polynomials
from dicksonhit.f2poly import Polynomial
from dicksonhit.steenrod import (
    Kind,
    OperatorWord,
    apply_word,
    binomial_mod2,
    chi_sq,
    chi_trick_certificate,
    chi_trick_residue,
    sq,
)
from math import comb

x = Polynomial.var(1, 1)


@given(st.integers(0, 200), st.integers(0, 200))
def test_lucas(e, k):
    assert binomial_mod2(e, k) == comb(e, k) % 2


@given(st.integers(0, 40), st.integers(0, 40))
def test_one_variable_rule(d, k):
    expected = x ** (d + k) if comb(d, k) % 2 else Polynomial.zero(1)
    assert sq(k, x**d) == expected


def _total_square(f: Polynomial) -> dict[int, Polynomial]:
    # independent: Sq = sum Sq^i is the ring map x -> x + x^2
    images = [Polynomial.var(f.nvars, k) + Polynomial.var(f.nvars, k) ** 2 for k in range(1, f.nvars + 1)]
    return f.substitute(images).homogeneous_parts()


@given(polynomials(3, max_degree=5))
def test_matches_total_square(f):
    for d, part in f.homogeneous_parts().items():
        total = _total_square(part)
        for i in range(d + 1):
            assert sq(i, part) == total.get(d + i, Polynomial.zero(3))


@given(polynomials(2, max_degree=4), polynomials(2, max_degree=4), st.integers(0, 8))
def test_cartan(f, g, k):
    rhs = Polynomial.zero(2)
    for i in range(k + 1):
        rhs = rhs + sq(i, f) * sq(k - i, g)
    assert sq(k, f * g) == rhs


@given(polynomials(3, max_degree=6))
def test_instability(f):
    for d, part in f.homogeneous_parts().items():
        assert sq(d, part) == part.square()
        assert not sq(d + 1, part)
        assert sq(0, part) == part


@given(polynomials(3, max_degree=5))
def test_adem_relations(f):
    assert not sq(1, sq(1, f))
    assert sq(1, sq(2, f)) == sq(3, f)
    assert sq(2, sq(2, f)) == sq(3, sq(1, f))
    assert sq(2, sq(3, f)) == sq(5, f) + sq(4, sq(1, f))


@given(polynomials(3, max_degree=5))
def test_conjugates_in_low_degree(f):
    assert chi_sq(1, f) == sq(1, f)
    assert chi_sq(2, f) == sq(2, f)
    assert chi_sq(3, f) == sq(2, sq(1, f))


def test_word_application_order():
    w = OperatorWord.of(("Sq", 2), ("Sq", 1))
    f = Polynomial.var(2, 1) * Polynomial.var(2, 2)
    assert apply_word(w, f) == sq(2, sq(1, f))
    assert str(OperatorWord.of((Kind.SQ, 8), (Kind.CHI_SQ, 4))) == "Word[Sq 8, Chi 4]"
    assert OperatorWord.of(("Sq", 8), ("Chi", 4)).degree == 12


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        sq(-1, x)


@given(polynomials(2, max_degree=4), st.integers(1, 5), polynomials(2, max_degree=4))
def test_chi_trick_certificate_reconstructs_residue(u, k, v):
    total = Polynomial.zero(2)
    for i, w in chi_trick_certificate(u, k, v):
        assert i >= 1
        total = total + sq(i, w)
    assert total == chi_trick_residue(u, k, v)
