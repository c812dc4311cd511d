from fractions import Fraction

import pytest

from conftest import GOLDEN, LEHMER, SMALLEST_PISOT
from salemlab import experiments
from salemlab.classify import Verdict
from salemlab.errors import BracketDivisionByZero, GIdenticallyZero
from salemlab.experiments import (
    bracket_sequence_check,
    closure_evidence,
    convergence_study,
    dufresnoy_bracket,
    iterate_scheme,
    reference_chain,
    reference_chain_report,
    scan_self_check,
    smallest_salem_scan,
)
from salemlab.families import alpha_family, beta_family, gamma_family
from salemlab.oracles import bisection_max_root
from salemlab.polyint import IntPoly


def test_iterate_alpha3():
    fe = alpha_family(2, 3)
    states = iterate_scheme(fe.A, fe.P, n_max=3)
    assert [st.n for st in states] == [1, 2, 3]
    for st in states:
        assert st.checks["schwarz"]
        for key in ("G.product", "a.recurrence"):
            if key in st.checks:
                assert st.checks[key], (st.n, key)
        assert st.checks.get("G.first_step.derived", True)


def test_iterate_beta2_schwarz_values():
    fe = beta_family(2, 2)
    states = iterate_scheme(fe.A, fe.P, n_max=4)
    assert [st.a_n for st in states] == [4, 14, 194, 37634]
    assert all(1 <= st.f_bound_check <= 2 for st in states)
    # F_n(0) tends to 1 from above
    assert states[-1].f_bound_check == pytest.approx(1.0, abs=1e-8)


def test_iterate_rejects_equal_pair():
    with pytest.raises(GIdenticallyZero):
        iterate_scheme(GOLDEN, GOLDEN)


def test_iterate_gamma_runs():
    fe = gamma_family(2, 4, -1)
    states = iterate_scheme(fe.A, fe.P, n_max=3)
    assert all(st.checks["schwarz"] for st in states)


def test_convergence_rows():
    rows = convergence_study(SMALLEST_PISOT, 1, 2, 14)
    salem = [r for r in rows if r.verdict == Verdict.SALEM]
    assert [r.m for r in salem] == list(range(8, 15))
    gaps = [r.gap for r in salem]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert salem[0].tau == pytest.approx(bisection_max_root(LEHMER), abs=1e-9)
    assert convergence_study(SMALLEST_PISOT, 1, 5, 4) == []


def test_convergence_golden():
    rows = convergence_study(GOLDEN, -1, 2, 10)
    taus = [r.tau for r in rows if r.verdict == Verdict.SALEM]
    assert taus and abs(taus[-1] - (1 + 5 ** 0.5) / 2) < abs(taus[0] - (1 + 5 ** 0.5) / 2)


def test_scan_small_degrees():
    res = smallest_salem_scan(4, 1)
    assert res.minimum_tau == pytest.approx(1.722083806, abs=1e-9)
    assert res.minimizers() == [IntPoly([1, -1, -1, -1, 1])]
    assert scan_self_check(res)
    assert smallest_salem_scan(2, 1).salem_found == []
    with pytest.raises(ValueError):
        smallest_salem_scan(5, 1)


def test_scan_checkpoint_resume(tmp_path):
    path = tmp_path / "scan.ckpt"
    full = smallest_salem_scan(8, 1)
    chunked = smallest_salem_scan(8, 1, checkpoint=str(path), checkpoint_every=17)
    assert path.read_text().splitlines()[0] == f"8,1,81,{len(full.salem_found)}"
    resumed = smallest_salem_scan(8, 1, checkpoint=str(path))
    assert chunked.to_dict() == full.to_dict() == resumed.to_dict()


def test_scan_parallel_matches_serial(monkeypatch):
    serial = smallest_salem_scan(10, 1).to_dict()
    monkeypatch.setenv("SALEMLAB_THREADS", "2")
    monkeypatch.setattr(experiments, "PARALLEL_MIN", 10)
    assert smallest_salem_scan(10, 1).to_dict() == serial


def test_dufresnoy_bracket():
    br = dufresnoy_bracket(2, 4)
    # scaled form of 2 + (4/3) z - z^2
    assert br.D2 == IntPoly([6, 4, -3])
    assert br.tau2 == pytest.approx((4 / 3 + (16 / 9 + 8) ** 0.5) / 2, abs=1e-12)
    assert br.ordered
    with pytest.raises(ValueError):
        dufresnoy_bracket(1, 0)


def test_bracket_sequence():
    b, w = reference_chain(2)
    assert w[2] == 10 and b[2] == 12
    seq = bracket_sequence_check(b, w, 2)
    assert len(seq.D_polys) == 6
    short = bracket_sequence_check(b[:3], w[:3], 2)
    assert len(short.D_polys) == 4
    with pytest.raises(BracketDivisionByZero):
        bracket_sequence_check([1, 1, 1], [1, 1, 1], 2)


def test_reference_chain_findings():
    for u0 in (2, 3):
        seq, checks = reference_chain_report(u0)
        assert checks["D3.poly"] and checks["D3.negative"] and checks["D4.poly"]
        # the displayed value of D_4(u0 + 1) does not follow from the displayed D_4
        assert not checks["D4.value"]
        assert seq.values_at[3] == seq.D_polys[3](Fraction(u0 + 1))


def test_closure_evidence_small():
    a = closure_evidence(1.17, 1.33, 120)
    b = closure_evidence(1.17, 1.33, 120)
    assert a == b
    assert closure_evidence(1.17, 1.33, 0)["examined"] == 0
    with pytest.raises(ValueError):
        closure_evidence(1.3, 1.2, 10)
