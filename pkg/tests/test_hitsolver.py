import itertools

import pytest

from oracles import hit_space_by_enumeration
from dicksonhit.cache import (
    FORMAT_VERSION,
    CacheChecksumError,
    CacheVersionError,
    cache_clear,
    cache_info,
    cache_load,
    cache_path,
    cache_store,
)
from dicksonhit.dickson import dickson_q
from dicksonhit.f2poly import Polynomial, monomials_of_degree, to_vector
from dicksonhit.hitsolver import (
    HitCertificate,
    HitSolver,
    ResourceCeilingExceeded,
    SolverLimits,
    hit_space_basis,
    is_hit,
    verify_certificate,
)


@pytest.mark.parametrize("n,d", [(n, d) for n in (1, 2) for d in range(1, 11)])
def test_exhaustive_against_span_oracle(n, d, solver):
    basis = monomials_of_degree(n, d)
    span = hit_space_by_enumeration(n, d)
    reduced = solver.basis(n, d)
    assert reduced.rank == len(span).bit_length() - 1
    for bits in itertools.product((0, 1), repeat=len(basis)):
        f = Polynomial(n, [m for m, b in zip(basis.monomials, bits) if b])
        v = to_vector(f, basis)
        result = reduced.decide(f)
        assert result.hit == (v in span)
        if result.hit:
            assert verify_certificate(f, result)


@pytest.mark.parametrize("d", range(1, 65))
def test_one_variable_spikes(d, solver):
    x = Polynomial.var(1, 1)
    spike = (d + 1) & d == 0
    assert solver.is_hit(x**d).hit == (not spike)


def test_small_dickson_cases(solver):
    assert not solver.is_hit(dickson_q(1, 0)).hit
    assert not solver.is_hit(dickson_q(2, 1)).hit
    cert = solver.is_hit(dickson_q(2, 0))
    assert cert.hit and verify_certificate(dickson_q(2, 0), cert)
    assert verify_certificate(dickson_q(2, 0), HitCertificate(((1, dickson_q(2, 1)),)))


def test_constants_and_zero(solver):
    assert not solver.is_hit(Polynomial.one(2)).hit
    zero = solver.is_hit(Polynomial.zero(2))
    assert zero.hit and zero.terms == ()


def test_mixed_degree_concatenates(solver):
    x1, x2 = Polynomial.var(2, 1), Polynomial.var(2, 2)
    f = x1**2 + x1**4 * x2
    result = solver.is_hit(f)
    assert result.hit and verify_certificate(f, result)
    assert not solver.is_hit(f + x1).hit


def test_witness_is_reduced(solver):
    w = solver.is_hit(dickson_q(2, 1))
    assert not w.hit
    residual = w.residual_polynomial
    assert residual and not solver.is_hit(residual).hit
    assert solver.is_hit(residual + dickson_q(2, 1)).hit


def test_restricted_generators(solver):
    x = Polynomial.var(1, 1)
    # x^11 = Sq^4(x^7); Sq^1, Sq^2, Sq^3 all vanish on x^10, x^9, x^8
    assert not solver.is_hit(x**11, max_sq=3).hit
    cert = solver.is_hit(x**11, max_sq=4)
    assert cert.hit and all(i <= 4 for i, _ in cert.terms)


def test_verify_certificate_rejects_sq0():
    x = Polynomial.var(1, 1)
    assert not verify_certificate(x**2, HitCertificate(((0, x**2),)))
    assert not verify_certificate(x**3, HitCertificate(((1, x**2),)))


def test_ceilings():
    small = HitSolver(SolverLimits(max_columns=10))
    with pytest.raises(ResourceCeilingExceeded):
        small.basis(3, 6)
    with pytest.raises(ResourceCeilingExceeded):
        HitSolver(SolverLimits(max_degree=5)).basis(1, 6)
    with pytest.raises(ResourceCeilingExceeded):
        HitSolver(SolverLimits(max_generators=5)).basis(2, 6)


def test_deterministic_across_workers():
    a = hit_space_basis(3, 9, workers=1)
    b = hit_space_basis(3, 9, workers=2)
    assert a.rows == b.rows and a.slots == b.slots


def test_cache_round_trip(tmp_path):
    basis = hit_space_basis(2, 7)
    path = cache_store(basis, tmp_path)
    assert path == cache_path(tmp_path, 2, 7)
    loaded = cache_load(2, 7, tmp_path)
    assert loaded.rows == basis.rows and loaded.slots == basis.slots
    assert cache_load(2, 8, tmp_path) is None
    assert [e["d"] for e in cache_info(tmp_path)] == [7]
    assert cache_clear(tmp_path) == 1


def _rewrite(path, edit):
    import gzip
    import json

    with gzip.open(path, "rt") as fh:
        payload = json.load(fh)
    edit(payload)
    with gzip.open(path, "wt") as fh:
        json.dump(payload, fh)


def test_cache_version_and_checksum(tmp_path):
    path = cache_store(hit_space_basis(2, 5), tmp_path)
    _rewrite(path, lambda p: p.update(version=FORMAT_VERSION + 1))
    with pytest.raises(CacheVersionError):
        cache_load(2, 5, tmp_path)
    path = cache_store(hit_space_basis(2, 5), tmp_path)
    _rewrite(path, lambda p: p["rows"].pop())
    with pytest.raises(CacheChecksumError):
        cache_load(2, 5, tmp_path)


def test_solver_uses_cache(tmp_path):
    f = dickson_q(3, 2)
    first = HitSolver(cache_dir=tmp_path).is_hit(f)
    assert cache_path(tmp_path, 3, 4).exists()
    second = HitSolver(cache_dir=tmp_path).is_hit(f)
    assert first == second


def test_module_level_is_hit():
    assert is_hit(dickson_q(3, 2)).hit
