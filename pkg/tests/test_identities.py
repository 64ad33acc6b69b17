from dataclasses import replace
from fractions import Fraction

import pytest

from wzkit.identities import (SumBound, boundary_flat_rhs, boundary_flat_sum,
                              boundary_gap, boundary_stepped_rhs,
                              boundary_stepped_sum, check_identity,
                              corollary_derivations, eval_sum,
                              lemma_boundary_flat, lemma_boundary_stepped,
                              registry, thm3_difference)
from wzkit.identities import _inner_sum_fast
from wzkit.symalg import LinearForm


# ---------------------------------------------------------------------------
# eval_sum on registry cases


def test_eval_sum_examples():
    reg = registry()
    assert eval_sum(reg.case("thm1"), 5) == 6
    assert eval_sum(reg.case("thm3_printed"), 2) == -6
    assert eval_sum(reg.case("thm3_eq6"), 2) == 6
    assert eval_sum(reg.case("cor5"), 1) == 12


def test_eval_sum_respects_valid_from():
    with pytest.raises(ValueError):
        eval_sum(registry().case("thm3_eq6"), 0)


def test_check_identity_small_ranges():
    reg = registry()
    assert check_identity(reg.case("thm1"), 0, 60) == []
    assert check_identity(reg.case("thm2"), -1, 60) == []
    assert check_identity(reg.case("thm3_eq6"), 1, 40) == []
    for i in range(1, 6):
        assert check_identity(reg.case(f"cor{i}"), 0, 25) == []
    assert check_identity(reg.case("boundary_flat_case"), 1, 40) == []


def test_thm3_printed_fails_exactly_at_even_n():
    fails = check_identity(registry().case("thm3_printed"), 1, 40)
    assert [n for n, _, _ in fails] == [n for n in range(1, 41) if n % 2 == 0]
    for n, lhs, rhs in fails:
        assert lhs == (-1) ** (n + 1) * n * (n + 1)
        assert rhs == n * (n + 1)


def test_thm3_printed_matches_corrected_statement():
    case = registry().case("thm3_printed")
    for n in range(1, 60):
        assert eval_sum(case, n) == (-1) ** (n + 1) * n * (n + 1)


def test_mode_aliases():
    reg = registry()
    assert reg.case("thm3", "literal").case_id == "thm3_printed"
    assert reg.case("thm3", "corrected").case_id == "thm3_eq6"
    assert reg.case("thm3_printed").errata  # erratum attached to the variant


def test_fast_and_slow_paths_agree():
    reg = registry()
    for cid in reg.oracle_ids():
        case = reg.case(cid)
        inner = case.loops[-1]
        for n in range(case.valid_from, case.valid_from + 6):
            outer = {case.param: n}
            loops = case.loops
            frames = [outer] if len(loops) == 1 else [
                dict(outer, **{loops[0].var: v})
                for v in range(loops[0].lower.eval(outer),
                               loops[0].upper.eval(outer) + 1)]
            for fixed in frames:
                lo, hi = inner.lower.eval(fixed), inner.upper.eval(fixed)
                if hi < lo:
                    continue
                fast = _inner_sum_fast(case.summand, fixed, inner.var, lo, hi)
                assert fast is not None
                slow = Fraction(0)
                for v in range(lo, hi + 1):
                    slow += case.summand.eval(dict(fixed, **{inner.var: v}))
                assert fast == slow, (cid, fixed)


def test_clamped_limits_match_printed_limits():
    # cor2/cor4 upper limits overshoot the binomial top; clamping them to
    # the support must not change any value
    reg = registry()
    for cid, top_clamp in (("cor2", LinearForm.make({"n": 2, "k": 1}, 2)),
                           ("cor4", LinearForm.make({"n": 2, "k": 1}, 1))):
        case = reg.case(cid)
        inner = case.loops[1]
        clamped = replace(case, loops=(
            case.loops[0], replace(inner, upper=SumBound("affine", top_clamp))))
        for n in range(0, 25):
            assert eval_sum(case, n) == eval_sum(clamped, n), (cid, n)


def test_closed_form_eval():
    rhs = registry().case("boundary_flat_case").rhs
    for n in range(1, 30):
        assert rhs.eval(n) == boundary_flat_rhs(n)


# ---------------------------------------------------------------------------
# lemmas


def test_boundary_flat_examples():
    assert boundary_flat_sum(1) == 2 and boundary_flat_rhs(1) == 2
    assert lemma_boundary_flat(1) and lemma_boundary_flat(2)
    assert boundary_flat_sum(0) == 0 and boundary_flat_rhs(0) == 0


def test_boundary_flat_matches_dsl_case():
    case = registry().case("boundary_flat_case")
    for n in range(1, 40):
        assert eval_sum(case, n) == boundary_flat_sum(n)


def test_boundary_stepped_examples():
    assert boundary_stepped_sum(2) == -44 and boundary_stepped_rhs(2) == -44
    assert boundary_stepped_sum(1) == -6
    assert all(lemma_boundary_stepped(n) for n in (1, 2, 3))


def test_thm3_difference_examples():
    reg = registry()
    assert eval_sum(reg.case("thm3_eq6"), 1) == 2
    assert eval_sum(reg.case("thm3_eq6"), 2) == 6
    assert all(thm3_difference(n) for n in (1, 2, 3))


def test_boundary_gap_examples():
    assert boundary_gap(1) == -8
    assert boundary_gap(2) == -42
    assert boundary_gap(3) == -184
    for n in range(1, 61):
        assert boundary_gap(n) == 2 * (n + 1) - 3 * 4**n


def test_gap_plus_growth_recovers_difference():
    # gap + 3*4^n == the true difference 2(n+1)
    for n in range(1, 40):
        assert boundary_gap(n) + 3 * 4**n == 2 * (n + 1)


# ---------------------------------------------------------------------------
# corollary derivation recipes


def test_corollary_derivations():
    fails = corollary_derivations(limit=40)
    assert all(not v for v in fails.values()), fails


def test_corollary_point_values():
    reg = registry()
    assert eval_sum(reg.case("cor3"), 0) == 4
    assert eval_sum(reg.case("cor4"), 0) == 1
    assert eval_sum(reg.case("cor1"), 1) == 4
