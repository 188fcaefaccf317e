import json

import pytest
from hypothesis import given, strategies as st

from dicksonhit.cli import EvalError, ParseError, evaluate, parse, to_text
from dicksonhit.cli.grammar import Apply, Const, Power, Product, QPoly, Sum, Var, VPoly, WordApply
from dicksonhit.cli.main import main
from dicksonhit.dickson import dickson_q
from dicksonhit.f2poly import Polynomial
from dicksonhit.steenrod import Kind, OperatorWord


def test_parse_examples():
    e = parse("x1^2*x2 + x3")
    assert isinstance(e, Sum) and len(e.terms) == 2
    assert parse("Sq(1){Q(2,1)}") == Apply(Kind.SQ, 1, QPoly(2, 1))
    assert parse("Word[Sq 8, Chi 4]{x1}") == WordApply(
        OperatorWord.of(("Sq", 8), ("Chi", 4)), Var(1)
    )


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse("Q(2,")
    assert (info.value.line, info.value.column) == (1, 5)
    assert info.value.expected == {"number"}
    with pytest.raises(ParseError) as info:
        parse("x1 +\n  * x2")
    assert (info.value.line, info.value.column) == (2, 3)


@pytest.mark.parametrize("text", ["", "x", "2", "x1 x2", "Sq(1)x1", "Word[]{x1}", "x1^", "(x1", "x0"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse(text)


def test_eval_examples():
    assert evaluate(parse("Sq(1){Q(2,1)}"), 2) == dickson_q(2, 0)
    assert str(evaluate(parse("V(2)"), 2)) == "x1*x2 + x2^2"
    assert evaluate(parse("0"), 1) == Polynomial.zero(1)
    assert evaluate(parse("Chi(3){x1*x2}"), 2) == evaluate(parse("Sq(2){Sq(1){x1*x2}}"), 2)


def test_eval_range_errors():
    for text, n in [("x3", 2), ("V(3)", 2), ("Q(3,1)", 2), ("Q(2,3)", 2)]:
        with pytest.raises(EvalError):
            evaluate(parse(text), n)


leaves = st.one_of(
    st.integers(1, 3).map(Var),
    st.integers(0, 1).map(Const),
    st.integers(1, 3).map(VPoly),
    st.integers(1, 3).flatmap(lambda n: st.integers(0, n).map(lambda s: QPoly(n, s))),
)


def _extend(children):
    ops = st.lists(st.tuples(st.sampled_from(list(Kind)), st.integers(0, 4)), min_size=1, max_size=3)
    return st.one_of(
        st.lists(children, min_size=2, max_size=3).map(lambda t: Sum(tuple(t))),
        st.lists(children, min_size=2, max_size=3).map(lambda t: Product(tuple(t))),
        st.tuples(children, st.integers(0, 3)).map(lambda t: Power(*t)),
        st.tuples(st.sampled_from(list(Kind)), st.integers(0, 4), children).map(lambda t: Apply(*t)),
        st.tuples(ops, children).map(lambda t: WordApply(OperatorWord(tuple(t[0])), t[1])),
    )


expressions = st.recursive(leaves, _extend, max_leaves=6)


@given(expressions)
def test_print_parse_round_trip(e):
    assert parse(to_text(e)) == e
    assert parse(to_text(parse(to_text(e)))) == parse(to_text(e))


@given(st.text(alphabet="x123+*^(){}[],QVSqChiWord ", max_size=20))
def test_parser_never_crashes_unexpectedly(text):
    try:
        parse(text)
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


@pytest.fixture(autouse=True)
def _cache(tmp_path, monkeypatch):
    monkeypatch.setenv("DICKSONHIT_CACHE_DIR", str(tmp_path / "cache"))


def test_hit_not_hit(capsys):
    code, out = _run(capsys, "hit", "Q(2,1)", "--vars", "2")
    assert code == 0 and out.strip() == "NotHit"


def test_hit_certificate_json_is_refeedable(capsys):
    code, out = _run(capsys, "hit", "Q(4,3)", "--vars", "4", "--certificate", "--json")
    record = json.loads(out)
    assert code == 0
    assert set(record) == {"command", "inputs", "status", "data", "timing"}
    assert record["status"] == "hit" and record["timing"] is None
    assert record["data"]["certificate_verified"]
    expr = record["data"]["certificate_expression"]
    assert evaluate(parse(expr), 4) == dickson_q(4, 3)


def test_hit_flag_order_irrelevant(capsys):
    _, a = _run(capsys, "--json", "--vars", "3", "hit", "Q(3,2)", "--certificate")
    _, b = _run(capsys, "hit", "--certificate", "Q(3,2)", "--json", "--vars", "3")
    assert a == b


def test_hit_restricted_and_witness(capsys):
    code, out = _run(capsys, "hit", "x1^11", "--vars", "1", "--max-sq", "3", "--witness")
    assert code == 0 and out.split() == ["NotHit", "x1^11"]
    code, out = _run(capsys, "hit", "x1^11", "--vars", "1", "--max-sq", "4")
    assert out.strip() == "Hit"


def test_eval_and_usage_errors(capsys):
    assert _run(capsys, "eval", "Sq(1){Q(2,1)}", "--vars", "2") == (0, "x1^2*x2 + x1*x2^2\n")
    assert _run(capsys, "eval", "Q(2,", "--vars", "2")[0] == 2
    assert _run(capsys, "eval", "x1")[0] == 2
    assert _run(capsys, "eval", "x5", "--vars", "2")[0] == 2
    assert _run(capsys, "frobnicate")[0] == 2


def test_ceiling_exit_code(capsys):
    code, _ = _run(capsys, "hit", "x1^9*x2^9*x3^9", "--vars", "3", "--limit-columns", "50")
    assert code == 3


def test_dickson_command(capsys):
    code, out = _run(capsys, "dickson", "--n", "3", "--degree", "12")
    assert code == 0 and out.split() == ["Q3,2^3", "Q3,1^2"]
    code, out = _run(capsys, "dickson", "--n", "2", "--list", "--json")
    gens = json.loads(out)["data"]["generators"]
    assert [g["polynomial"] for g in gens] == ["x1^2*x2 + x1*x2^2", "x1^2 + x1*x2 + x2^2"]


def test_verify_command(capsys):
    code, out = _run(capsys, "verify", "sq-tables", "--json")
    record = json.loads(out)
    assert code == 0 and record["status"] == "pass"
    assert {r["status"] for r in record["data"]["reports"]} == {"exact-equal"}
    code, _ = _run(capsys, "verify", "v-identity")
    assert code == 1


def test_verify_json_byte_identical(capsys):
    _, a = _run(capsys, "verify", "antipode", "--json", "--seed", "5")
    _, b = _run(capsys, "verify", "antipode", "--json", "--seed", "5")
    assert a == b


def test_scan_and_cache_commands(capsys, tmp_path):
    code, out = _run(capsys, "scan", "--n", "3", "--dmax", "8", "--json")
    assert code == 0 and json.loads(out)["status"] == "all-hit"
    code, out = _run(capsys, "scan", "--n", "2", "--dmax", "3")
    assert code == 0 and "not hit: Q2,1^1" in out
    code, out = _run(capsys, "cache", "info", "--json")
    assert json.loads(out)["data"]["entries"]
    code, out = _run(capsys, "cache", "clear")
    assert code == 0 and out.startswith("removed")
