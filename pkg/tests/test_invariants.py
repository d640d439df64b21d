import json
import random
from fractions import Fraction

import pytest

from mubar.invariants import eta_combination, mubar_c_form, mubar_dedekind_form, verify_main_theorem
from mubar.plumbing import mubar_oracle
from mubar.seifert import (
    CoefficientVector,
    alternate_coefficients,
    enumerate_corpus,
    normalize_even,
    solve_coefficients,
    validate,
)


@pytest.mark.parametrize(
    "a, eta, mubar",
    [
        ((2, 3, 5), 1, -1),
        ((2, 3, 7), -1, 1),
        ((3, 5, 7), 0, 0),
        ((2, 3, 5, 7, 11), 2, -2),
    ],
)
def test_golden_values(a, eta, mubar):
    Y = validate(a)
    assert eta_combination(Y) == eta
    assert mubar_c_form(Y) == mubar
    assert mubar_dedekind_form(Y) == mubar
    assert mubar_oracle(Y) == mubar


def test_c_form_by_hand_for_2_3_7():
    # c(1,2) = 1, c(1,3) = 2, c(15,7) = 6 from b' = (1, 2, -8)
    Y = validate([2, 3, 7])
    assert mubar_c_form(Y, CoefficientVector((1, 2, -8), even_normalized=True)) == 1


def test_accepts_unnormalized_even_coefficients():
    Y = validate([2, 3, 5])
    assert mubar_c_form(Y, CoefficientVector((1, 1, -4))) == -1
    assert mubar_dedekind_form(Y, CoefficientVector((1, 1, -4))) == -1


@pytest.mark.parametrize("k", range(1, 9))
def test_parity_matches_casson_of_2_3_6k_pm_1(k):
    # Rohlin = Casson mod 2, and lambda(Sigma(2,3,6k+-1)) = -k
    for a in ((2, 3, 6 * k - 1), (2, 3, 6 * k + 1)):
        assert mubar_c_form(validate(a)) % 2 == k % 2


def test_parity_spin_case():
    for Y in enumerate_corpus(3, 25):
        report = verify_main_theorem(Y)
        if report.wu_self_intersection == 0:
            assert report.signature % 16 == (8 * report.mubar) % 16


def test_gauge_invariance_on_sample():
    rng = random.Random(5)
    corpus = list(enumerate_corpus(3, 30)) + list(enumerate_corpus(4, 20))
    for Y in rng.sample(corpus, 60):
        base = solve_coefficients(Y)
        expected = mubar_c_form(Y)
        for _ in range(3):
            shifts = [0] + [rng.randint(-4, 4) for _ in range(Y.n - 1)]
            alt = alternate_coefficients(Y, base, shifts)
            if Y.is_even:
                alt = normalize_even(Y, alt)
            assert mubar_c_form(Y, alt) == expected
            assert mubar_dedekind_form(Y, alt) == expected


def test_report_contents():
    report = verify_main_theorem(validate([2, 3, 5]))
    assert report.passed
    assert report.failed_verdicts == []
    d = report.to_dict()
    assert d["seifert"] == "Sigma(2,3,5)"
    assert d["eta_combination"] == "1"
    assert d["mubar"] == -1
    assert d["mubar_dedekind"] == "-1"
    assert d["signature"] == -8
    assert d["wu_self_intersection"] == 0
    assert d["aps_index"] == "0"
    for name in ["eta_equals_minus_mubar", "dedekind_equals_c_form", "mubar_is_integer", "oracle_agrees", "aps_index_zero"]:
        assert d["verdicts"][name] is True
    json.dumps(d)


def test_report_without_plumbing():
    report = verify_main_theorem(validate([3, 5, 7]), use_plumbing=False)
    assert report.passed
    assert "oracle_agrees" not in report.verdicts
    assert report.aps_index is None


@pytest.mark.parametrize("a", [(3, 5, 7), (2, 3, 5, 7, 11), (3, 5, 7, 11, 13), (7, 11, 13)])
def test_all_verdicts_pass(a):
    assert verify_main_theorem(validate(a)).passed


def test_eta_is_integral_on_corpus():
    for Y in enumerate_corpus(3, 20):
        eta = eta_combination(Y)
        assert eta.denominator == 1
        assert eta == -mubar_c_form(Y)


def _brute(q, p, x=0, y=0):
    from mubar.numeric import sawtooth

    x, y = Fraction(x), Fraction(y)
    return sum(sawtooth((mu + y) / p) * sawtooth(q * (mu + y) / p + x) for mu in range(p))


@pytest.mark.parametrize("a", [(2, 3, 5), (2, 3, 7), (3, 5, 7), (4, 5, 7), (3, 4, 5, 7)])
def test_eta_matches_unreduced_definition(a):
    # first arguments A/a_i are used as-is, no periodicity shortcuts
    Y = validate(a)
    A = Y.product
    half = Fraction(1, 2)
    expected = Fraction(1, 8) + sum(half * _brute(A // ai, ai) + _brute(A // ai, ai, half, half) for ai in Y.a)
    if not Y.is_even:
        expected -= Fraction(1, 8 * A)
    assert eta_combination(Y) == expected


def test_substitution_lemma_in_odd_case():
    from mubar.dedekind import dedekind_rademacher_sum

    half = Fraction(1, 2)
    for Y in enumerate_corpus(3, 40):
        if Y.is_even:
            continue
        b = solve_coefficients(Y)
        for i, (ai, bi) in enumerate(zip(Y.a, b)):
            sign = 1 if bi > 0 else -1
            assert sign * dedekind_rademacher_sum(abs(bi), ai, half, 0) == dedekind_rademacher_sum(
                Y.complement(i) % (2 * ai), ai, half, half
            )
