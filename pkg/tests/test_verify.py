import json

import pytest

from dicksonhit.dickson import DicksonSpec, dickson_q, v_poly
from dicksonhit.f2poly import Polynomial
from dicksonhit.steenrod import sq
from dicksonhit.verify import (
    EXACT,
    FAILED,
    MOD_HIT,
    ReplayReport,
    check_davis_composite,
    check_sq_on_Q,
    check_sq_on_V,
    check_sq_vanishing_on_V4_powers,
    check_V_identity,
    classify,
    main_theorem_scan,
    replay_case,
)
from dicksonhit.verify.replay import CaseMismatch, doubling_word
from dicksonhit.verify.suites import antipode_suite, chi_trick_triples, run_suite
from dicksonhit.verify.symbolic import DicksonCalculus
from dicksonhit.verify.tables import predicted_sq_on_Q, predicted_sq_on_V


def test_sq_on_V_examples():
    assert str(predicted_sq_on_V(2, 1)) == "x1^2*x2 + x1*x2^2"
    assert not predicted_sq_on_V(4, 3)
    assert predicted_sq_on_V(3, 4) == v_poly(3) ** 2
    for n, i in [(2, 1), (4, 3), (3, 4)]:
        assert check_sq_on_V(n, i).status == EXACT


def test_sq_on_Q_examples():
    assert predicted_sq_on_Q(2, 1, 1) == dickson_q(2, 0)
    assert predicted_sq_on_Q(3, 1, 4) == dickson_q(3, 1) * dickson_q(3, 2)
    assert predicted_sq_on_Q(4, 1, 12) == dickson_q(4, 1) * dickson_q(4, 2)
    assert not predicted_sq_on_Q(2, 0, 1)
    for args in [(2, 1, 1), (3, 1, 4), (2, 0, 1), (4, 1, 12)]:
        assert check_sq_on_Q(*args).status == EXACT


@pytest.mark.parametrize("n", [2, 3, 4])
def test_v_identity_from_two_variables_up(n):
    assert check_V_identity(n).status == EXACT


def test_v_identity_at_one_variable_reports_difference():
    report = check_V_identity(1)
    assert report.status == FAILED
    assert str(report.difference) == "x1*x2"


def test_vanishing_on_V4_powers():
    assert check_sq_vanishing_on_V4_powers(2, 4).status == EXACT
    assert check_sq_vanishing_on_V4_powers(1, 4).status == EXACT
    assert check_sq_vanishing_on_V4_powers(3, 1).status == EXACT


def test_davis_trivial_and_small():
    assert check_davis_composite(4, Polynomial.zero(1)).status == EXACT
    report = check_davis_composite(4, Polynomial.var(1, 1) ** 4)
    assert report.status in (EXACT, MOD_HIT)


def test_failed_report_carries_difference():
    record = check_V_identity(1).to_record()
    assert record["status"] == FAILED and record["difference"] == "x1*x2"
    assert record["timing"] is None


def test_classify():
    assert classify(DicksonSpec(3, (0, 2, 0), 1)) == "C1"
    assert classify(DicksonSpec(3, (0, 1, 0), 1)) == "C2"
    assert classify(DicksonSpec(3, (0, 1, 1), 1)) == "C3"
    assert classify(DicksonSpec(3, (0, 1, 1), 2)) == "C4"
    assert classify(DicksonSpec(3, (1, 1, 1), 1)) == "C5"
    assert classify(DicksonSpec(3, (1, 1, 1), 2)) == "C6"
    assert classify(DicksonSpec(4, (0, 1, 1, 0), 1)) == "C7"


def test_doubling_word():
    nu, b, word = doubling_word(2)
    assert (nu, b, str(word)) == (1, 1, "Word[Sq 8]")
    nu, b, word = doubling_word(12)
    assert (nu, b, str(word)) == (2, 3, "Word[Sq 48, Sq 24]")


@pytest.mark.parametrize(
    "case,spec,status",
    [
        ("C1", DicksonSpec(3, (0, 2, 0), 1), EXACT),
        ("C2", DicksonSpec(3, (2, 1, 0), 2), EXACT),
        ("C3", DicksonSpec(3, (0, 1, 1), 1), MOD_HIT),
        ("C5", DicksonSpec(3, (1, 1, 1), 1), MOD_HIT),
        ("C6", DicksonSpec(3, (1, 1, 1), 2), EXACT),
        ("C7", DicksonSpec(4, (0, 1, 1, 0), 1), EXACT),
    ],
)
def test_replay_examples(case, spec, status):
    report = replay_case(case, spec)
    assert report.status == status, [s.to_record() for s in report.steps]


def test_replay_rejects_wrong_case():
    with pytest.raises(CaseMismatch):
        replay_case("C1", DicksonSpec(3, (0, 1, 0), 1))
    with pytest.raises(ValueError):
        replay_case("C9", DicksonSpec(3, (0, 1, 0), 1))


def test_symbolic_calculus_matches_concrete():
    calc = DicksonCalculus(3)
    p = calc.monomial(1, (1, 0, 1))
    for j in range(0, 13):
        assert calc.to_concrete(calc.sq(j, p)) == sq(j, calc.to_concrete(p))


def test_scan_small():
    report = main_theorem_scan(2, 6)
    assert report.status == "not-hit-found"
    assert "Q2,1^1" in report.not_hit
    report = main_theorem_scan(3, 4)
    assert report.status == "all-hit" and report.verified == report.total == 1
    report = main_theorem_scan(4, 8)
    assert report.status == "all-hit"
    assert report.to_record()["expected"] == "all-hit"


def test_suites_are_seeded():
    assert chi_trick_triples(7) == chi_trick_triples(7)
    assert chi_trick_triples(7) != chi_trick_triples(8)
    a = [r.to_record() for r in antipode_suite(11, count=5)]
    b = [r.to_record() for r in antipode_suite(11, count=5)]
    assert json.dumps(a) == json.dumps(b)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_report_passed():
    assert ReplayReport("x", {}, EXACT).passed
    assert not ReplayReport("x", {}, FAILED).passed
