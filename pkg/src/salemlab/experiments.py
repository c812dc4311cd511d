"""Desk-scale studies: iteration identities, Salem convergence, scans, brackets.

Everything here is a composition of the exact primitives in polyint,
rootloc, classify and families.  Floating point appears only in reported
root values and in the Schwarz-bound column of the iteration check.
"""

import concurrent.futures
import logging
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from salemlab.classify import (
    CaseTag,
    Verdict,
    build_G,
    classify_number,
    pisot_orientation,
)
from salemlab.errors import BracketDivisionByZero, CaseMismatch, NoRootAboveOne
from salemlab.families import accumulation_polys, family_sweep, salem_construct
from salemlab.polyint import IntPoly, SignChoice, parse_poly
from salemlab.rootloc import mahler_measure, max_real_root_above_one

log = logging.getLogger(__name__)

CHECKPOINT_EVERY = 1_000_000
PARALLEL_MIN = 10_000  # smaller chunks are not worth a process pool
CLUSTER_GAP = 1e-4
LIMIT_TOL = 1e-6


# -- iteration scheme -------------------------------------------------------------

@dataclass
class IterationState:
    n: int
    A_n: IntPoly
    B_n: IntPoly
    G_n: IntPoly
    a_n: Fraction
    f_bound_check: float
    case_tag: CaseTag
    checks: Dict[str, bool] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    readings: Dict[str, object] = field(default_factory=dict)

    @property
    def all_hold(self):
        return all(self.checks.values())

    def to_dict(self):
        return {
            "n": self.n,
            "case_tag": self.case_tag.value,
            "a_n": str(self.a_n),
            "F_n0": self.f_bound_check,
            "deg_A_n": self.A_n.degree(),
            "deg_G_n": self.G_n.degree(),
            "checks": dict(self.checks),
            "readings": {k: (str(v) if isinstance(v, Fraction) else v)
                         for k, v in self.readings.items()},
            "notes": list(self.notes),
        }


def _log_abs_fraction(x):
    return math.log(abs(x.numerator)) - math.log(x.denominator)


def _first_step(g):
    """(A1, B1, G1 displayed form, derived form) for the active case."""
    A, B, G = g.A, g.B, g.G
    s, h = g.P.degree(), A.degree()
    e = int(g.eps_product)
    A1 = A * A + G
    if g.case_tag == CaseTag.H_GE_S_PLUS_1:
        B1 = B * B + G
        display = (A * B) ** 2 * G
        derived = (A + B) ** 2 * G
    elif g.case_tag == CaseTag.S_GE_H_PLUS_1:
        B1 = G + (B * B).shift(2 * (s - h))
        display = (A - B.shift(s - h) * e) ** 2 * G
        derived = display
    else:
        k, eta = g.k, int(g.eta)
        B1 = B * B + G.shift(2 * k)
        display = (B - A.shift(k) * eta) ** 2 * G
        derived = (B + A.shift(k) * eta) ** 2 * G
    return A1, B1, display, derived


def _x_power(g, n):
    """X_n with G_n = A_n B_n - X_n (n >= 1)."""
    PQ = g.P * g.Q
    X = PQ ** (2 ** n)
    if g.case_tag == CaseTag.H_GE_S_PLUS_1:
        X = X.shift((2 ** n) * (g.A.degree() - g.P.degree()))
    return X


def iterate_scheme(A, P, n_max=4):
    """Exact iterates A_n, B_n, G_n with the per-step identity checks.

    Step 0 -> 1 uses the case-specific first step; afterwards
    A_{n+1} = A_n^2 + G_n, B_{n+1} = B_n^2 + G_n and G_n = A_n B_n - X_n.
    """
    if not 1 <= n_max <= 6:
        raise ValueError("n_max must lie in [1, 6]")
    g = build_G(A, P)
    u0 = P.const
    pq0 = P.const * g.Q.const
    s, h = P.degree(), A.degree()
    theta = max_real_root_above_one(P)
    log_theta = math.log(theta) if theta else None
    case1 = g.case_tag == CaseTag.H_GE_S_PLUS_1
    top = h if case1 else s

    A1, B1, display1, derived1 = _first_step(g)
    G1 = A1 * B1 - _x_power(g, 1)
    states = []
    An, Bn, Gn = A1, B1, G1
    prev = None
    for n in range(1, n_max + 1):
        a_n = Fraction(An.const + Bn.const, pq0 ** (2 ** (n - 1)))
        if log_theta is not None and a_n != 0:
            logF = _log_abs_fraction(a_n) + (2 ** (n - 1)) * (math.log(u0) - 2 * log_theta)
            F0 = math.copysign(math.exp(min(logF, 700.0)), a_n)
        else:
            F0 = float("nan")
        st = IterationState(n, An, Bn, Gn, a_n, F0, g.case_tag)
        if n == 1:
            st.checks["G.first_step.display"] = G1 == display1
            st.checks["G.first_step.derived"] = G1 == derived1
            _u1a1_readings(st, g, A1, B1)
        else:
            Ap, Bp, Gp = prev
            st.checks["G.product"] = Gn == (Ap + Bp) ** 2 * Gp
            if case1:
                st.checks["G.display"] = Gn == (Ap * Bp) ** 2 * Gp
            expected = prev_a * prev_a if case1 else prev_a * prev_a - 2
            st.checks["a.recurrence"] = a_n == expected
        st.checks["schwarz"] = bool(F0 <= 2 + 1e-9)
        if Bn != An.reverse_to(max(An.degree(), (2 ** n) * top)):
            st.notes.append(str(CaseMismatch(
                f"B_{n} is not the degree-{(2 ** n) * top} reversal of A_{n}")))
        if An.degree() > (2 ** n) * top:
            st.notes.append(str(CaseMismatch(
                f"deg A_{n} = {An.degree()} exceeds {(2 ** n) * top}")))
        states.append(st)
        prev, prev_a = (An, Bn, Gn), a_n
        if n < n_max:
            An, Bn = An * An + Gn, Bn * Bn + Gn
            Gn = An * Bn - _x_power(g, n + 1)
    return states


def _u1a1_readings(st, g, A1, B1):
    """Compare A_1(0) + B_1(0) with the three-case display and both readings of u_1 a_1."""
    u0 = g.A.const
    b0 = g.B.const
    g0 = g.G.const
    total = A1.const + B1.const
    u1 = g.A[1] - u0 * g.Q[1]  # second coefficient of A/Q
    a1 = Fraction(total, g.P.const * g.Q.const)
    if g.case_tag == CaseTag.S_GE_H_PLUS_1:
        displayed = u0 * u0 + 2 * u0
    elif g.case_tag == CaseTag.S_EQ_H and g.k == 0:
        displayed = u0 * u0 + b0 * b0 + u0 * (b0 - 1)
    elif g.case_tag == CaseTag.S_EQ_H:
        displayed = u0 * u0 + b0 * b0 + g0
    else:
        displayed = None
    st.readings.update({
        "A1_0_plus_B1_0": total,
        "displayed_value": displayed,
        "display_matches": displayed == total,
        "u0": u0,
        "u1": u1,
        "a1": a1,
        "reading_u0_holds": u0 * a1 == total,
        "reading_u1_holds": u1 * a1 == total,
    })


# -- convergence -------------------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceRow:
    m: int
    tau: Optional[float]
    gap: Optional[float]
    verdict: Optional[Verdict]

    def to_dict(self):
        return {"m": self.m, "tau": self.tau, "gap": self.gap,
                "verdict": self.verdict.value if self.verdict else None}


def convergence_study(P, eta, m_min, m_max):
    """One row per m: tau_m from the Salem construction and |tau_m - theta|."""
    if m_max - m_min > 64:
        raise ValueError("m range is limited to 64 values")
    eta = SignChoice.of(eta)
    P = pisot_orientation(P)
    theta = max_real_root_above_one(P)
    rows = []
    for m in range(max(1, m_min), m_max + 1):
        sc = salem_construct(P, m, eta)
        gap = abs(sc.tau - theta) if sc.tau is not None and theta is not None else None
        rows.append(ConvergenceRow(m, sc.tau, gap, sc.verdict))
    return rows


# -- scan --------------------------------------------------------------------------

@dataclass
class ScanResult:
    degree: int
    height: int
    salem_found: List[Tuple[IntPoly, float]]
    minimum_tau: Optional[float]
    polynomials_examined: int

    def minimizers(self, tol=1e-9):
        if self.minimum_tau is None:
            return []
        return [p for p, t in self.salem_found if abs(t - self.minimum_tau) <= tol]

    def to_dict(self):
        return {
            "degree": self.degree,
            "height": self.height,
            "polynomials_examined": self.polynomials_examined,
            "minimum_tau": self.minimum_tau,
            "salem_found": [{"poly": str(p), "tau": t} for p, t in self.salem_found],
        }


def _palindrome(degree, height, index):
    half = degree // 2
    base = 2 * height + 1
    free = []
    for _ in range(half):
        index, r = divmod(index, base)
        free.append(r - height)
    free.reverse()  # lexicographic: the first free coefficient varies slowest
    coeffs = [1] + free
    coeffs += coeffs[: degree - half][::-1]
    return IntPoly(coeffs)


def _scan_range(degree, height, start, stop):
    found = []
    for idx in range(start, stop):
        p = _palindrome(degree, height, idx)
        roots = np.roots(np.array(p.coeffs[::-1], dtype=float))
        if int(np.sum(np.abs(roots) > 1.0 + 1e-7)) != 1:
            continue
        nc = classify_number(p)
        if nc.verdict == Verdict.SALEM:
            found.append(str(p))
    return found


def _read_checkpoint(path, degree, height):
    with open(path, encoding="ascii") as fh:
        head = fh.readline().strip().split(",")
        d, h, last, count = (int(x) for x in head)
        if (d, h) != (degree, height):
            raise ValueError(f"checkpoint {path} is for degree={d}, height={h}")
        polys = [line.strip() for line in fh if line.strip()]
    if len(polys) != count:
        raise ValueError(f"checkpoint {path} is truncated")
    return last, polys


def _write_checkpoint(path, degree, height, last, polys):
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(f"{degree},{height},{last},{len(polys)}\n")
        for p in polys:
            fh.write(p + "\n")
    os.replace(tmp, path)


def _workers():
    try:
        return max(1, int(os.environ.get("SALEMLAB_THREADS", "1")))
    except ValueError:
        return 1


def smallest_salem_scan(degree, height, checkpoint=None, checkpoint_every=CHECKPOINT_EVERY):
    """All Salem polynomials among the monic palindromes of the given degree and height."""
    if degree % 2 or not 2 <= degree <= 12:
        raise ValueError("degree must be even and in [2, 12]")
    if not 1 <= height <= 2:
        raise ValueError("height must be 1 or 2")
    total = (2 * height + 1) ** (degree // 2)
    start, polys = 0, []
    if checkpoint and os.path.exists(checkpoint):
        start, polys = _read_checkpoint(checkpoint, degree, height)
        log.info("resuming scan at index %d", start)
    workers = _workers()
    pos = start
    while pos < total:
        stop = min(total, pos + checkpoint_every)
        if workers > 1 and stop - pos > PARALLEL_MIN:
            step = -(-(stop - pos) // workers)
            bounds = [(a, min(stop, a + step)) for a in range(pos, stop, step)]
            with concurrent.futures.ProcessPoolExecutor(workers) as ex:
                parts = ex.map(_scan_range, *zip(*[(degree, height, a, b) for a, b in bounds]))
                for part in parts:
                    polys.extend(part)
        else:
            polys.extend(_scan_range(degree, height, pos, stop))
        pos = stop
        if checkpoint:
            _write_checkpoint(checkpoint, degree, height, pos, polys)
    found = []
    for text in polys:
        p = parse_poly(text)
        found.append((p, max_real_root_above_one(p)))
    found.sort(key=lambda pt: (pt[1], pt[0].coeffs))
    return ScanResult(degree, height, found, found[0][1] if found else None, total)


def scan_self_check(result, tol=1e-9):
    """tau == M(p) == M(p(-z)) for every polynomial found."""
    for p, tau in result.salem_found:
        if abs(mahler_measure(p).value - tau) > tol:
            return False
        if abs(mahler_measure(p.compose_neg()).value - tau) > tol:
            return False
    return True


# -- brackets ----------------------------------------------------------------------

@dataclass(frozen=True)
class BracketPair:
    u0: int
    u1: int
    D2: IntPoly
    D2star: IntPoly
    tau2: Optional[float]
    tau2star: Optional[float]

    @property
    def ordered(self):
        if self.tau2 is None or self.tau2star is None:
            return None
        return self.tau2 < self.tau2star

    def to_dict(self):
        return {"u0": self.u0, "u1": self.u1, "D2": str(self.D2),
                "D2star": str(self.D2star), "tau2": self.tau2,
                "tau2star": self.tau2star, "ordered": self.ordered}


def _root_or_none(p):
    r = max_real_root_above_one(p)
    if r is None:
        log.info("%s", NoRootAboveOne(f"{p} has no real root above 1"))
    return r


def dufresnoy_bracket(u0, u1):
    """Scaled D_2 = (u0+1)u0 + u1 z - (u0+1)z^2 and D_2* = (u0-1)u0 - u1 z + (u0-1)z^2."""
    if u0 < 2:
        raise ValueError("u0 must be >= 2 (D_2* divides by u0 - 1)")
    D2 = IntPoly([(u0 + 1) * u0, u1, -(u0 + 1)])
    D2s = IntPoly([(u0 - 1) * u0, -u1, u0 - 1])
    return BracketPair(u0, u1, D2, D2s, _root_or_none(D2), _root_or_none(D2s))


class RatPoly:
    """Minimal rational-coefficient polynomial for the bracket recurrence."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return RatPoly([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return RatPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return RatPoly(out)

    def __eq__(self, other):
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def scale(self, c):
        return RatPoly([c * x for x in self.coeffs])

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"


@dataclass
class BracketSequence:
    D_polys: List[RatPoly]
    w_values: List[Fraction]
    b_values: List[int]
    values_at: List[Fraction]
    signs: List[int]
    u0: int

    def to_dict(self):
        return {
            "u0": self.u0,
            "b": [str(b) for b in self.b_values],
            "w": [str(w) for w in self.w_values],
            "D": [{"n": n, "poly": str(D), "value_at_u0_plus_1": str(v), "sign": sg}
                  for n, (D, v, sg) in enumerate(zip(self.D_polys, self.values_at, self.signs), 1)],
        }


def bracket_sequence_check(b_values, w_values, u0):
    """D_1 = 1 - z, D_2 = 1 + w_2 z - z^2, then the three-term recurrence.

    Lists are indexed from 1 (b_1, w_1 first); D_n is built for every
    n <= len + 1 the data allow, and each is evaluated at u0 + 1.
    """
    if len(b_values) != len(w_values) or len(b_values) < 3:
        raise ValueError("b and w lists must have equal length >= 3")
    b = [int(x) for x in b_values]
    w = [Fraction(x) for x in w_values]
    one_plus_z = RatPoly([1, 1])
    z = RatPoly([0, 1])
    D = [RatPoly([1, -1]), RatPoly([1, w[1], -1])]
    for n in range(1, len(b)):
        # D_{n+2} from D_{n+1}, D_n with ratio (b_{n+1} - w_{n+1}) / (b_n - w_n)
        den = b[n - 1] - w[n - 1]
        if den == 0:
            raise BracketDivisionByZero(f"b_{n} == w_{n} = {w[n - 1]}")
        ratio = (b[n] - w[n]) / den
        D.append(one_plus_z * D[-1] - z * D[-2].scale(ratio))
    x = Fraction(u0 + 1)
    vals = [Dn(x) for Dn in D]
    signs = [(v > 0) - (v < 0) for v in vals]
    return BracketSequence(D, w, b, vals, signs, u0)


def reference_chain(u0):
    """The (b_n, w_n) chain n = 1..5 of the bracket argument, as functions of u0."""
    b1, b2 = 1, u0 + 2
    b3 = u0 * u0 + 3 * u0 + 2
    b4 = (u0 + 1) * b3 + 1
    b5 = (u0 + 1) * b4 + 2
    w = [Fraction(0), Fraction(1, 2), Fraction(u0 * u0 + 2 * u0 + 2),
         (u0 + 1) * b3 + u0 + Fraction(1, 2) + Fraction(3, 2 * u0 + 3),
         (u0 + 1) * b4 - u0 + 1 + Fraction(1, u0 + 1)]
    return [b1, b2, b3, b4, b5], w


def reference_chain_report(u0):
    """Check the displayed D_3..D_6 facts at u0 + 1 against the recurrence."""
    b, w = reference_chain(u0)
    seq = bracket_sequence_check(b, w, u0)
    v = seq.values_at
    q = Fraction(b[4] - w[4], b[3] - w[3])
    u = Fraction(u0)
    d6_display = -(u + 2) * (u * u - 3) + (u + 1) * q * (2 * u * u + Fraction(3, 2) * u - Fraction(5, 4))
    D3_display = RatPoly([1, -u0, u0 + 1, -1])
    D4_display = RatPoly([1, -(u - Fraction(3, 2 * u0 + 3)),
                          Fraction(1, 2) * (1 + Fraction(3, 2 * u0 + 3)),
                          u + 1 - Fraction(3, 2 * u0 + 3), -1])
    D5_display = RatPoly([1, -(u - Fraction(1, u0 + 1)), Fraction(1, u0 + 1), 1,
                          u + 1 - Fraction(1, u0 + 1), -1])
    checks = {
        "D3.poly": seq.D_polys[2] == D3_display,
        "D3.negative": v[2] < 0,
        "D4.poly": seq.D_polys[3] == D4_display,
        "D4.value": v[3] == -u * u + u / 2 + Fraction(7, 4),
        "D5.poly": seq.D_polys[4] == D5_display,
        "D5.value": v[4] == -(u * u - 3),
        "D6.value": v[5] == d6_display,
        "D6.ge_u0_sq": v[5] >= u * u,
    }
    return seq, checks


# -- closure evidence --------------------------------------------------------------

@dataclass
class Cluster:
    members: List[Tuple[float, str, int, int]]  # (tau, source P, eta, m)
    limit: float
    witness: Optional[str]
    witness_value: Optional[float]

    def to_dict(self):
        return {
            "size": len(self.members),
            "lo": self.members[0][0],
            "hi": self.members[-1][0],
            "limit": self.limit,
            "witness": self.witness,
            "witness_value": self.witness_value,
        }


def _pisot_sources(s_max=8):
    seen = {}
    cands = []
    for s in range(2, s_max + 1):
        cands.extend(accumulation_polys(s))
    for fe in family_sweep(u0_values=(2,), s_max=4):
        cands.append(fe.P)
    for p in cands:
        nc = classify_number(p)
        if nc.verdict != Verdict.PISOT:
            continue
        P = pisot_orientation(p)
        if P not in seen:
            seen[P] = nc.value
    return sorted(seen.items(), key=lambda kv: (kv[1], kv[0].coeffs))


def _aitken(xs):
    if len(xs) < 3:
        return xs[-1]
    x0, x1, x2 = xs[-3:]
    den = x2 - 2 * x1 + x0
    if den == 0:
        return x2
    return x2 - (x2 - x1) ** 2 / den


def closure_evidence(interval_lo, interval_hi, budget, m_max=48):
    """Salem numbers in (lo, hi) from the construction, clustered and matched to Pisot limits."""
    if not 1 < interval_lo < interval_hi:
        raise ValueError("need 1 < lo < hi")
    report = {"interval": [interval_lo, interval_hi], "budget": budget,
              "examined": 0, "salem_in_interval": 0, "clusters": []}
    if budget <= 0:
        return report
    sources = _pisot_sources()
    points = []
    examined = 0
    for P, theta in sources:
        for eta in (1, -1):
            for m in range(1, m_max + 1):
                if examined >= budget:
                    break
                sc = salem_construct(P, m, eta)
                examined += 1
                if sc.verdict == Verdict.SALEM and interval_lo < sc.tau < interval_hi:
                    points.append((sc.tau, str(P), eta, m))
    points.sort()
    report["examined"] = examined
    report["salem_in_interval"] = len(points)
    groups = []
    for pt in points:
        if groups and pt[0] - groups[-1][-1][0] <= CLUSTER_GAP:
            groups[-1].append(pt)
        else:
            groups.append([pt])
    for grp in groups:
        if len(grp) < 3:
            continue
        # the longest single-source run gives the limit estimate
        by_src = {}
        for tau, src, eta, m in grp:
            by_src.setdefault((src, eta), []).append((m, tau))
        key = max(sorted(by_src), key=lambda k: len(by_src[k]))
        run = [t for _, t in sorted(by_src[key])]
        limit = _aitken(run)
        witness = None
        wval = None
        for P, theta in sources:
            if abs(theta - limit) <= LIMIT_TOL:
                witness, wval = str(P), theta
                break
        report["clusters"].append(Cluster(grp, limit, witness, wval).to_dict())
    return report
