import pytest
from hypothesis import given, strategies as st

from dicksonhit.dickson import (
    DicksonSpec,
    a_form,
    dickson_decompose,
    dickson_degree,
    dickson_q,
    dickson_q_oracle,
    enumerate_dickson_monomials,
    gl_invariance_check,
    oracle_extra_powers,
    v_poly,
)
from dicksonhit.f2poly import Polynomial


def test_small_values():
    assert str(v_poly(2)) == "x1*x2 + x2^2"
    assert str(dickson_q(1, 0)) == "x1"
    assert str(dickson_q(2, 1)) == "x1^2 + x1*x2 + x2^2"
    assert str(dickson_q(2, 0)) == "x1^2*x2 + x1*x2^2"
    assert dickson_q(3, 3) == Polynomial.one(3)


@pytest.mark.parametrize("n", range(1, 6))
def test_against_oracle(n):
    for s in range(n + 1):
        assert dickson_q(n, s) == dickson_q_oracle(n, s)
    assert oracle_extra_powers(n) == []


@pytest.mark.parametrize("n", range(1, 5))
def test_degrees_and_homogeneity(n):
    assert v_poly(n).degree == 2 ** (n - 1)
    for s in range(n):
        q = dickson_q(n, s)
        assert q.is_homogeneous()
        assert q.degree == dickson_degree(n, s) == 2**n - 2**s


@pytest.mark.parametrize("n", range(1, 5))
def test_gl_invariance(n):
    for s in range(n):
        assert gl_invariance_check(n, dickson_q(n, s))
    if n >= 2:
        assert not gl_invariance_check(n, Polynomial.var(n, 1))


def test_spec_validation():
    with pytest.raises(ValueError):
        DicksonSpec(3, (1, 2))
    with pytest.raises(ValueError):
        DicksonSpec(3, (1, -1, 0))
    spec = DicksonSpec(3, (0, 2, 0), a=1)
    assert spec.nvars == 4
    assert spec.degree == 8 + 2 * 6
    assert spec.label() == "V4^1*Q3,1^2"
    assert a_form(spec).degree == spec.degree


def test_enumeration():
    assert [s.exps for s in enumerate_dickson_monomials(2, 6)] == [(0, 3), (2, 0)]
    assert enumerate_dickson_monomials(3, 5) == []


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
def test_decompose_round_trip(e0, e1, e2):
    spec = DicksonSpec(3, (e0, e1, e2))
    if spec.degree == 0:
        return
    p = a_form(spec)
    assert dickson_decompose(p, 3) == [spec.exps]


def test_decompose_rejects_non_invariant():
    assert dickson_decompose(Polynomial.var(2, 1) ** 2, 2) is None
