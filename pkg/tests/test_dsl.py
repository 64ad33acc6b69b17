from fractions import Fraction

import pytest

from wzkit.dsl import (ParseError, SpecDocument, parse_document,
                       parse_spec, print_document)
from wzkit.identities import registry
from wzkit.symalg import LinearForm, MultiPoly, RationalFunction, rf_equal


def test_parse_term_thm2_style():
    doc = parse_document(
        "term F2(n, k) := binom(n+k+1, 2*k) * pow(2, 2*k) * sign(k+n+1) / (2*n+3)\n")
    term = doc.terms["F2"].term
    assert term.binomials == ((LinearForm.make({"n": 1, "k": 1}, 1),
                               LinearForm.make({"k": 2})),)
    assert term.powers == ((2, LinearForm.make({"k": 2})),)
    assert term.sign_exp == LinearForm.make({"k": 1, "n": 1}, 1)
    assert rf_equal(term.prefactor,
                    RationalFunction(MultiPoly.const(1),
                                     LinearForm.make({"n": 2}, 3).to_poly()))
    assert term.eval({"n": 1, "k": 1}) == Fraction(-12, 5)


def test_parse_cert():
    doc = parse_document(
        "cert R2(n, k) := (2*k*(2*k-1)) / ((n+2-k)*(2*n+5))\n")
    r = doc.certs["R2"].rf
    assert r.eval({"n": 1, "k": 2}) == Fraction(12, 7)


def test_parse_syntax_error_position():
    with pytest.raises(ParseError) as err:
        parse_document("term X( := 1\n")
    assert err.value.line == 1
    assert err.value.col == 9  # the ':=' where a parameter name was expected


def test_parse_error_reports_line():
    with pytest.raises(ParseError) as err:
        parse_document("term A(n) := binom(n, 1)\nterm B(n) := pow(1, n)\n")
    assert err.value.line == 2  # pow base must be >= 2


def test_undefined_reference():
    with pytest.raises(ParseError) as err:
        parse_document("sum s(n) := sum(k, 0, n, NOPE) == n for n >= 0\n")
    assert "NOPE" in str(err.value)


def test_duplicate_definition():
    text = "term A(n) := (n)\nterm A(n) := (n + 1)\n"
    with pytest.raises(ParseError) as err:
        parse_document(text)
    assert "duplicate" in str(err.value)


def test_arity_mismatch():
    text = ("term A(n, k, m) := binom(n + k, m)\n"
            "sum s(n) := sum(k, 0, n, A) == n for n >= 0\n")
    with pytest.raises(ParseError) as err:
        parse_document(text)
    assert "parameters" in str(err.value)


def test_nested_sum_and_floor2():
    text = ("term T(n, k, m) := sign(m + k + n + 1) * binom(n + k + 1, m) * pow(2, m - 1)\n"
            "sum s(n) := sum(m, 2, 2*n, T) sum(k, 0, floor2(m - 2), T) "
            "== n^2 + n for n >= 1\n")
    case = parse_document(text).sums["s"].case
    assert [lp.var for lp in case.loops] == ["m", "k"]
    assert case.loops[1].upper.kind == "floored-half"
    assert case.valid_from == 1


def test_nested_sum_requires_same_summand():
    text = ("term T(n, k, m) := binom(n + k, m)\n"
            "term U(n, k, m) := binom(n + k, m)\n"
            "sum s(n) := sum(k, 0, n, T) sum(m, 0, n, U) == n for n >= 0\n")
    with pytest.raises(ParseError) as err:
        parse_document(text)
    assert "same term" in str(err.value)


def test_recurrence_coeffs_only_shift_var():
    text = ("term F(n, k) := binom(n + k, k)\n"
            "cert R(n, k) := k / (n + 1)\n"
            "recurrence w(n, k) := [-1, k] * F cert R\n")
    with pytest.raises(ParseError) as err:
        parse_document(text)
    assert "k" in str(err.value)


def test_check_statement_target_resolution():
    with pytest.raises(ParseError):
        parse_document("check oracle missing [0, 5]\n")
    with pytest.raises(ParseError):
        parse_document("check lemma not_a_lemma [0, 5]\n")
    doc = parse_document("check lemma boundary_gap [1, 100]\n")
    assert doc.checks[0].range == (1, 100)


def test_closed_form_with_pow_and_sign():
    text = ("term T(n, m) := binom(n + 1, m)\n"
            "sum s(n) := sum(m, 0, n, T) == 1/2 + (1/2)*sign(n) - (n + 1)*sign(n)"
            " + 3*pow(4, n) for n >= 0\n")
    rhs = parse_document(text).sums["s"].case.rhs
    for n in range(0, 8):
        expected = (Fraction(1, 2) + Fraction(1, 2) * (-1) ** n
                    - (n + 1) * (-1) ** n + 3 * 4**n)
        assert rhs.eval(n) == expected


def test_closed_form_affine_pow_exponent():
    # pow(2, 2n+1) folds to 2 * 4^n
    text = ("term T(n, m) := binom(n, m)\n"
            "sum s(n) := sum(m, 0, n, T) == pow(2, 2*n + 1) for n >= 0\n")
    rhs = parse_document(text).sums["s"].case.rhs
    assert [p[:2] for p in rhs.parts] == [(4, 0)]
    assert rhs.eval(3) == 2 ** 7


def test_unknown_statement_keyword():
    with pytest.raises(ParseError) as err:
        parse_document("frobnicate x := 1\n")
    assert err.value.line == 1 and err.value.col == 1


def test_parse_spec_alias():
    assert isinstance(parse_spec("term A(n) := (n)\n"), SpecDocument)


# ---------------------------------------------------------------------------
# round-trip idempotence on the bundled files


def _bundled_texts():
    from importlib.resources import files
    data = files("wzkit").joinpath("data")
    return {e.name: e.read_text() for e in data.iterdir()
            if e.name.endswith(".wz")}


@pytest.mark.parametrize("name", sorted(_bundled_texts()))
def test_roundtrip_idempotence(name):
    text = _bundled_texts()[name]
    doc = parse_document(text)
    printed = print_document(doc)
    reparsed = parse_document(printed)
    assert reparsed == doc
    # and printing is a fixpoint from here on
    assert print_document(reparsed) == printed


def test_registry_bundles_parse():
    reg = registry()
    assert len(reg.documents) >= 5
    assert "thm1" in reg.cases and "wz_thm2" in reg.problems
