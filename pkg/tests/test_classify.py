import itertools

import pytest

from conftest import GOLDEN, LEHMER, SMALLEST_PISOT
from salemlab.classify import (
    CaseTag,
    Verdict,
    build_G,
    classify_number,
    even_multiplicity_check,
    is_irreducible,
    pisot_orientation,
    sprime_criterion,
)
from salemlab.errors import CriterionFails, GIdenticallyZero
from salemlab.families import alpha_family, beta_family
from salemlab.oracles import bisection_max_root, brute_force_irreducible
from salemlab.polyint import IntPoly, cyclotomic


def P(*c):
    return IntPoly(list(c))


def test_irreducible_examples():
    assert is_irreducible(SMALLEST_PISOT)[0]
    assert not is_irreducible(P(1, 0, -1))[0]
    assert is_irreducible(LEHMER)[0]
    assert not is_irreducible(LEHMER * cyclotomic(5))[0]


def test_irreducible_matches_oracle_small():
    # a quick slice of the full degree <= 6 comparison in the acceptance suite
    for cs in itertools.product(range(-1, 2), repeat=4):
        for lead in (1, -2):
            p = IntPoly(list(cs) + [lead])
            assert is_irreducible(p)[0] == brute_force_irreducible(p), p


def test_classify_examples():
    nc = classify_number(SMALLEST_PISOT)
    assert nc.verdict == Verdict.PISOT
    assert nc.value == pytest.approx(1.324717957, abs=1e-9)
    nc = classify_number(LEHMER)
    assert nc.verdict == Verdict.SALEM
    assert nc.value == pytest.approx(1.176280818, abs=1e-9)
    nc = classify_number(P(1, -1, -1, -1, 1))
    assert nc.verdict == Verdict.SALEM
    assert nc.value == pytest.approx(bisection_max_root(P(1, -1, -1, -1, 1)), abs=1e-9)
    assert nc.value == pytest.approx(1.722083806, abs=1e-9)


def test_classify_other_verdicts():
    assert classify_number(cyclotomic(7)).verdict == Verdict.CYCLOTOMIC
    assert classify_number(P(1, 0, 1) * P(1, 1)).verdict == Verdict.CYCLOTOMIC
    # integers >= 2 are Pisot numbers of degree 1; 3/2 is not an algebraic integer
    assert classify_number(P(-3, 1)).verdict == Verdict.PISOT
    assert classify_number(P(-3, 2)).verdict == Verdict.NEITHER
    # two roots outside the disk, and the reversed polynomial has a negative dominant root
    assert classify_number(P(-1, -3, 0, 1)).verdict == Verdict.NEITHER
    assert classify_number(P(1, 0, -1)).verdict != Verdict.PISOT


def test_classify_reversed_orientation():
    nc = classify_number(P(-1, 0, 1, 1))
    assert nc.verdict == Verdict.PISOT
    assert nc.value == pytest.approx(1.324717957, abs=1e-9)
    assert pisot_orientation(P(-1, 0, 1, 1)).const >= 1


def test_build_G_beta():
    fe = beta_family(2, 2)
    g = build_G(fe.A, fe.P)
    assert g.G == P(1, 0, -1) ** 2 * 2
    fe = beta_family(2, 3)
    assert build_G(fe.A, fe.P).G == P(1, 0, 0, -1) ** 2 * 2


def test_build_G_cases():
    assert build_G(P(1), GOLDEN).case_tag == CaseTag.S_GE_H_PLUS_1
    assert build_G(P(2, 1, 1, 1), GOLDEN).case_tag == CaseTag.H_GE_S_PLUS_1
    with pytest.raises(GIdenticallyZero):
        build_G(GOLDEN, GOLDEN)


def test_sprime_criterion_passes():
    cert = sprime_criterion(P(1), GOLDEN)
    assert cert.even_multiplicity
    fe = alpha_family(2, 3)
    assert fe.A == P(2, -1, 2, -1) and fe.Q == P(1, -3, 1, -2)
    sprime_criterion(fe.A, fe.P)


def test_sprime_criterion_rejects():
    with pytest.raises(GIdenticallyZero):
        sprime_criterion(GOLDEN, GOLDEN)
    # A much larger than Q on the circle
    with pytest.raises(CriterionFails):
        sprime_criterion(P(5, 5), GOLDEN)


def test_even_multiplicity():
    assert even_multiplicity_check(P(1, 0, 0, 0, -1) ** 2 * 2)
    g = P(1, 1) * (P(1) + IntPoly.monomial(3))
    assert even_multiplicity_check(g ** 2 * 2)
    assert not even_multiplicity_check(P(1, 0, -1))


def test_series_coefficients():
    from salemlab.classify import series_coefficients
    # 1/(1 - z - z^2) gives the Fibonacci numbers
    assert series_coefficients(P(1), P(1, -1, -1), 8) == [1, 1, 2, 3, 5, 8, 13, 21]
    with pytest.raises(ValueError):
        series_coefficients(P(1), P(2, 1), 3)


def test_lemma_coefficients_alpha_and_gamma():
    from salemlab.classify import lemma_coefficients
    from salemlab.families import gamma_family
    for u0 in (2, 3, 4):
        fe = alpha_family(u0, 4)
        r = lemma_coefficients(fe.A, fe.P)
        assert r["d"] <= r["s"] - 3 and r["case_d_small"] and r["g0_formula"]
        fe = gamma_family(u0, 5, -1)
        r = lemma_coefficients(fe.A, fe.P)
        assert r["d"] == r["s"] - 2
        assert r["u1_fixed"] and r["v1_fixed"] and r["b1_one"] and r["g0_formula"]
        # b2 comes out as u0 and G(0) as u0 - 1
        assert (r["b2"], r["G0"]) == (u0, u0 - 1)
