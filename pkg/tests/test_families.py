import pytest

from conftest import GOLDEN, LEHMER, SMALLEST_PISOT
from salemlab.classify import Verdict, even_multiplicity_check
from salemlab.errors import NoAssociation
from salemlab.families import (
    Family,
    accumulation_polys,
    alpha_family,
    beta_family,
    boyd_associate,
    boyd_search,
    check_identities,
    cyclotomic_factorization,
    family_sweep,
    gamma4_element,
    gamma_family,
    make_element,
    salem_construct,
    sprime1_families,
    uv_families,
    verify_association,
)
from salemlab.polyint import IntPoly, cyclotomic

ONE_MINUS_Z = IntPoly([1, -1])
Z = IntPoly([0, 1])


def P(*c):
    return IntPoly(list(c))


def _holds(fe, ident):
    return {r.identity_id: r.holds for r in check_identities(fe)}[ident]


def test_beta_elements():
    fe = beta_family(2, 2)
    assert fe.A == P(2, 1)
    assert ONE_MINUS_Z * fe.Q == P(1, -3, 0, 2)
    assert fe.Q == P(1, -2, -2)
    assert fe.Q + Z * fe.A == P(1, 0, -1)
    fe = beta_family(2, 3)
    assert fe.Q + Z * fe.A == P(1, 0, 0, -1)


def test_beta_theta():
    from salemlab.rootloc import max_real_root_above_one
    assert max_real_root_above_one(beta_family(2, 2).P) == pytest.approx(1 + 3 ** 0.5, abs=1e-9)


def test_gamma_elements():
    assert gamma_family(2, 3, 1).A == P(2, -2, -2, 1)
    fe = gamma_family(2, 5, -1)
    assert fe.Q + Z * fe.A == P(1, 1) * (P(1, -1, -1) + P(0, 0, 0, 1, 0, -1))
    assert even_multiplicity_check(gamma_family(3, 4, -1).G)


def test_gamma4_elements():
    fe = gamma4_element(2)
    assert fe.A == P(2, 1, -2, -1, 1)
    assert fe.Q + Z * fe.A == P(1, 0, -1) * P(1, 0, -1, -1)
    fe = gamma4_element(3)
    assert fe.A.const == 3 and fe.Q.const == 1


def test_alpha_elements():
    fe = alpha_family(2, 3)
    assert (fe.A, fe.Q) == (P(2, -1, 2, -1), P(1, -3, 1, -2))
    assert fe.G == fe.A - Z * fe.Q == P(2, -2, 5, -2, 2)
    fe = alpha_family(2, 2)
    assert (fe.A, fe.Q) == (P(2, 1, -1), P(1, -2, -2))


def test_u0_one_families():
    assert sprime1_families("beta", "A1", 4).A == P(1, 1, 1)
    fe = sprime1_families("gamma4")
    assert (fe.A, fe.Q) == (P(1, 0, -1, 0, 1), P(1, -1, -2, 0, 1))
    fe = sprime1_families("alpha", "A2", 3)
    assert (fe.A, fe.Q) == (P(1, -1, 1, -1), P(1, -2, 1, -1))


def test_uv_families():
    fe = uv_families(3, 1, "beta", 2)
    assert ONE_MINUS_Z * fe.A == P(3, -3)
    fe = uv_families(3, 2, "smallest_h")
    assert (fe.A, fe.Q) == (P(3, -3, 1), P(1, -4, 2))
    fe = uv_families(3, 1, "alpha_ext", 4)
    assert fe.Q + Z * fe.A == P(1, -1) ** 2 * (P(1) + IntPoly.monomial(3))
    with pytest.raises(ValueError):
        uv_families(3, 3, "beta", 2)


def test_make_element_dispatch():
    assert make_element(Family.BETA, u0=2, s=3).A == beta_family(2, 3).A
    assert make_element("gamma", u0=2, s=4, eps=-1).A == gamma_family(2, 4, -1).A


def test_identity_reports():
    assert _holds(beta_family(2, 4), "Eq20.QzP")
    assert _holds(gamma_family(2, 5, -1), "Eq21.QzA")
    assert _holds(uv_families(3, 1, "alpha_ext", 5), "Eq28.QmzP")
    # the exact expansion is (1 - z) times the degree 10 Salem polynomial
    reports = {r.identity_id: r for r in check_identities(gamma_family(2, 10, -1))}
    assert not reports["Rem4.tau0"].holds
    assert reports["Rem4.tau0_factor"].holds


def test_sweep_is_deterministic():
    a = [fe.to_dict() for fe in family_sweep(u0_values=(2,), s_max=4)]
    b = [fe.to_dict() for fe in family_sweep(u0_values=(2,), s_max=4)]
    assert a == b and len(a) > 10


def test_accumulation_polys():
    assert accumulation_polys(2)[0] == SMALLEST_PISOT
    assert P(1, 0, -1, -1, 1) in accumulation_polys(3)
    assert P(1, -1, 1, 0, -1, 2, -1) in accumulation_polys(5)


def test_cyclotomic_factorization():
    W = LEHMER * cyclotomic(3) * cyclotomic(1)
    U, R, idx = cyclotomic_factorization(W)
    assert sorted(idx) == [1, 3] and U.const == 1 and U * R == W


def test_salem_construct_examples():
    sc = salem_construct(GOLDEN, 2, -1)
    assert sc.W == P(1, -1, -2, -1, 1)
    assert sc.verdict == Verdict.SALEM
    sc = salem_construct(beta_family(2, 3).P, 1, 1)
    assert sc.R.degree() == 0 and sc.tau is None
    sc = salem_construct(SMALLEST_PISOT, 8, 1)
    assert sc.R == LEHMER and sc.U == ONE_MINUS_Z


def test_lehmer_association_verifies():
    for u0 in (2, 3):
        Pg = gamma_family(u0, 10, -1).P
        assert verify_association(LEHMER, ONE_MINUS_Z, Pg, 1, 1)


def test_boyd_round_trip_small():
    sc = salem_construct(GOLDEN, 2, -1)
    found = boyd_associate(sc.R, 2, -1)
    assert any(a.P == GOLDEN for a in found)


def test_boyd_rejects():
    with pytest.raises(ValueError):
        boyd_search(SMALLEST_PISOT, 1, 1)
    with pytest.raises(NoAssociation):
        boyd_associate(LEHMER, 1, 1, max_cyclotomic_degree=0, max_pisot_degree=9)
