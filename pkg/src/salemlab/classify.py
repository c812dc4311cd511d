"""Pisot / Salem classification, irreducibility, and the S' criterion.

The internal orientation follows the constant-term-first convention used
throughout the package: a Pisot polynomial P has P(0) >= 1, a unit leading
coefficient, and its largest root theta > 1; the companion Q = eps z^s P(1/z)
has Q(0) = 1.  Standard monic minimal polynomials are accepted as well, since
their root set is the same.
"""

import enum
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from salemlab.errors import (
    BadLeadingCoeff,
    CriterionFails,
    DegreeCapExceeded,
    GIdenticallyZero,
    PrecisionUnreachable,
)
from salemlab.polyint import (
    IntPoly,
    Reciprocity,
    SignChoice,
    cyclotomic,
    cyclotomic_indices_up_to_degree,
    div_exact,
    divides,
    is_reciprocal,
    poly_gcd,
    reciprocal_B,
    reciprocal_Q,
    squarefree_decomposition,
)
from salemlab.rootloc import (
    RootProfile,
    _cauchy_bound,
    all_roots,
    circle_classification,
    circle_part,
    circle_transform,
    count_inside_unit_disk,
    count_on_unit_circle,
    count_real_roots,
    isolate_real_roots,
    max_real_root_above_one,
    sturm_chain,
)

log = logging.getLogger(__name__)

DEGREE_CAP = 64
Z = IntPoly([0, 1])


class Verdict(str, enum.Enum):
    PISOT = "Pisot"
    SALEM = "Salem"
    CYCLOTOMIC = "CyclotomicProduct"
    NEITHER = "Neither"


class CaseTag(str, enum.Enum):
    H_GE_S_PLUS_1 = "h_ge_s_plus_1"
    S_GE_H_PLUS_1 = "s_ge_h_plus_1"
    S_EQ_H = "s_eq_h"


@dataclass
class NumberClass:
    verdict: Verdict
    value: Optional[float]
    profile: RootProfile
    irreducible: Optional[bool]
    irreducible_method: str
    degree: int
    polynomial: IntPoly
    orientation: str = "direct"  # or "reversed": theta is a root of reverse(p)

    def to_dict(self):
        p = self.profile
        return {
            "verdict": self.verdict.value,
            "value": self.value,
            "degree": self.degree,
            "polynomial": str(self.polynomial),
            "orientation": self.orientation,
            "irreducible": self.irreducible,
            "irreducible_method": self.irreducible_method,
            "inside": p.inside_count,
            "on": p.on_count,
            "outside": p.outside_count,
            "exact_counts": p.exact,
        }


@dataclass(frozen=True)
class GConstruction:
    G: IntPoly
    case_tag: CaseTag
    k: int
    eta: SignChoice
    eps_product: SignChoice
    A: IntPoly
    B: IntPoly
    P: IntPoly
    Q: IntPoly
    eps: SignChoice
    eps_prime: SignChoice


@dataclass(frozen=True)
class SPrimeCertificate:
    A: IntPoly
    P: IntPoly
    g: GConstruction
    N: IntPoly
    circle_margin: bool  # |Q|^2 - |A|^2 >= 0 on |z| = 1, finitely many zeros
    equality_count: int
    even_multiplicity: bool


# -- irreducibility --------------------------------------------------------------

def _divisors(n):
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p):
    """All rational roots of p (p(0) != 0 assumed), via the rational root test."""
    out = []
    for a in _divisors(p.const):
        for b in _divisors(p.lead):
            if math.gcd(a, b) != 1:
                continue
            for r in (Fraction(a, b), Fraction(-a, b)):
                if p.sign_at(r) == 0:
                    out.append(r)
    return sorted(set(out))


def _cyclotomic_divisor(p):
    for n in cyclotomic_indices_up_to_degree(p.degree()):
        phi = cyclotomic(n)
        if divides(phi, p):
            return n
    return None


def _unit_groups(p, roots):
    """Split certified roots of real p into real roots and conjugate pairs.

    Each unit is (low coefficients of its monic factor, radius, modulus).
    """
    bound = _cauchy_bound(p)
    n_real = count_real_roots(p, -bound, bound)
    by_imag = sorted(roots, key=lambda r: abs(r.center.imag))
    real, rest = by_imag[:n_real], by_imag[n_real:]
    units = []
    for r in real:
        if abs(r.center.imag) > r.radius:
            raise PrecisionUnreachable(f"cannot certify a real root of {p}")
        units.append(((-r.center.real,), r.radius, abs(r.center.real)))
    upper = [r for r in rest if r.center.imag > 0]
    lower = [r for r in rest if r.center.imag <= 0]
    if len(upper) != len(lower):
        raise PrecisionUnreachable(f"cannot pair the complex roots of {p}")
    for u in upper:
        j = min(range(len(lower)), key=lambda i: abs(lower[i].center - u.center.conjugate()))
        l = lower.pop(j)
        if abs(l.center - u.center.conjugate()) > u.radius + l.radius + 1e-300:
            raise PrecisionUnreachable(f"conjugate root disks of {p} do not match")
        c = u.center
        units.append(((abs(c) ** 2, -2 * c.real), max(u.radius, l.radius), abs(c)))
    return units


def _reconstruct_factor(p, units):
    """Search conjugation-closed root subsets for an integer factor of p."""
    deg = p.degree()
    lead = abs(p.lead)
    eps = 2.0 ** -52
    for size in range(1, len(units) + 1):
        for combo in itertools.combinations(range(len(units)), size):
            k = sum(len(units[i][0]) for i in combo)
            if k < 2 or k > deg // 2:
                continue
            poly = [1.0]
            maj = 1.0
            maj_pert = 1.0
            for i in combo:
                low, rad, mod = units[i]
                factor = list(low) + [1.0]
                new = [0.0] * (len(poly) + len(factor) - 1)
                for a, x in enumerate(poly):
                    for b, y in enumerate(factor):
                        new[a + b] += x * y
                poly = new
                mult = len(low)
                maj *= (1 + mod) ** mult
                maj_pert *= (1 + mod + rad) ** mult
            err = lead * ((maj_pert - maj) + 4 * deg * eps * maj_pert)
            if err >= 0.5:
                raise PrecisionUnreachable(
                    f"root radii too large to round factor coefficients of {p}")
            cand = IntPoly([round(lead * c) for c in poly])
            if cand.degree() < 1:
                continue
            cand = cand.primitive()
            if divides(cand, p):
                return cand
    return None


def is_irreducible(p):
    """(irreducible over Q, method note) for a nonzero integer polynomial.

    Content is ignored, so 2 + 2z counts as irreducible.  Degree is capped
    at DEGREE_CAP.
    """
    if p.is_zero():
        raise ValueError("irreducibility of the zero polynomial")
    n = p.degree()
    if n > DEGREE_CAP:
        raise DegreeCapExceeded(f"degree {n} exceeds the cap {DEGREE_CAP}")
    if n <= 0:
        return False, "constant"
    if n == 1:
        return True, "linear"
    p = p.primitive()
    if p.const == 0:
        return False, "divisible by z"
    if poly_gcd(p, p.derivative()).degree() > 0:
        return False, "repeated factor"
    c = circle_part(p)
    if 0 < c.degree() < n:
        return False, "proper factor gcd(p, reverse p)"
    if c.degree() == n and count_on_unit_circle(p) > 0:
        idx = _cyclotomic_divisor(p)
        if idx is not None:
            if cyclotomic(idx).degree() == n:
                return True, f"cyclotomic Phi_{idx}"
            return False, f"cyclotomic factor Phi_{idx}"
    if rational_roots(p):
        return False, "rational root"
    if n <= 3:
        return True, "no rational root, degree <= 3"
    # No cyclotomic factor from here on.  With a unit leading coefficient and
    # a single root outside the closed disk, any factor missing that root has
    # all roots in |z| <= 1 and |constant| >= 1, so all of them on the circle;
    # Kronecker then makes it cyclotomic, which was excluded.
    if abs(p.lead) == 1 or abs(p.const) == 1:
        inside, exact = count_inside_unit_disk(p)
        on = count_on_unit_circle(p)
        outside = n - inside - on
        if exact:
            if abs(p.lead) == 1 and outside == 1:
                return True, "root pattern: one root outside, unit lead"
            if abs(p.const) == 1 and inside == 1:
                return True, "root pattern: one root inside, unit constant"
    units = _unit_groups(p, all_roots(p))
    factor = _reconstruct_factor(p, units)
    if factor is not None:
        return False, f"factor {factor}"
    return True, "root-subset exhaustion"


# -- classification --------------------------------------------------------------

def _normalize(p):
    q = p.primitive()
    if q.const < 0 or (q.const == 0 and q.lead < 0):
        q = -q
    return q


def classify_number(p, check_irreducible=True):
    """Verdict for the algebraic number(s) defined by p.

    ``check_irreducible=False`` skips the (possibly costly) irreducibility
    test for polynomials that cannot be Pisot, Salem or cyclotomic anyway.
    """
    if p.is_zero() or p.degree() < 1:
        raise ValueError("classify_number needs degree >= 1")
    q = _normalize(p)
    n = q.degree()
    profile = circle_classification(q)
    inside, on, outside = profile.inside_count, profile.on_count, profile.outside_count
    unit_lead = abs(q.lead) == 1
    unit_const = abs(q.const) == 1

    def result(verdict, value=None, orientation="direct", irr=None, note="not checked"):
        return NumberClass(verdict, value, profile, irr, note, n, q, orientation)

    def irreducibility():
        if n > DEGREE_CAP:
            return None, f"skipped: degree above {DEGREE_CAP}"
        return is_irreducible(q)

    if on == n and unit_lead:
        irr, note = irreducibility()
        return result(Verdict.CYCLOTOMIC, 1.0, irr=irr, note=note)

    if on == 0 and q.const != 0:
        if unit_lead and outside == 1:
            theta = max_real_root_above_one(q)
            if theta is not None:
                irr, note = irreducibility()
                if irr:
                    return result(Verdict.PISOT, theta, "direct", irr, note)
        if unit_const and inside == 1:
            theta = max_real_root_above_one(q.reverse())
            if theta is not None:
                irr, note = irreducibility()
                if irr:
                    return result(Verdict.PISOT, theta, "reversed", irr, note)

    if (unit_lead and n >= 4 and n % 2 == 0 and inside == 1 and outside == 1
            and is_reciprocal(q) == Reciprocity.RECIPROCAL
            and profile.distinct_roots == n):
        tau = max_real_root_above_one(q)
        if tau is not None:
            irr, note = irreducibility()
            if irr:
                return result(Verdict.SALEM, tau, "direct", irr, note)

    if check_irreducible:
        irr, note = irreducibility()
        return result(Verdict.NEITHER, None, irr=irr, note=note)
    return result(Verdict.NEITHER)


def pisot_orientation(p):
    """Return the Pisot polynomial oriented with P(0) >= 1 and a unit lead, for p."""
    nc = classify_number(p)
    if nc.verdict != Verdict.PISOT:
        raise ValueError(f"{p} is not a Pisot polynomial ({nc.verdict.value})")
    q = nc.polynomial if nc.orientation == "direct" else nc.polynomial.reverse()
    if q.const < 0:
        q = -q
    return q


# -- the G construction and the S' criterion ----------------------------------

def build_G(A, P):
    """The three-case G polynomial attached to a pair (A, P)."""
    if P.is_zero() or A.is_zero():
        raise ValueError("A and P must be nonzero")
    if abs(P.lead) != 1:
        raise BadLeadingCoeff(f"P must have a unit leading coefficient, got {P.lead}")
    if P.const < 1:
        raise ValueError(f"P(0) must be >= 1, got {P.const}")
    if A.const < 1:
        raise ValueError(f"A(0) must be >= 1, got {A.const}")
    Q, eps = reciprocal_Q(P)
    B, eps_p = reciprocal_B(A)
    s, h = P.degree(), A.degree()
    e = SignChoice(eps * eps_p)
    k = 0
    eta = SignChoice.PLUS
    if h >= s + 1:
        tag = CaseTag.H_GE_S_PLUS_1
        G = A * B - (P * Q).shift(h - s) * int(e)
    elif s >= h + 1:
        tag = CaseTag.S_GE_H_PLUS_1
        G = P * Q - (A * B).shift(s - h) * int(e)
    else:
        tag = CaseTag.S_EQ_H
        W = A * B - P * Q * int(e)
        if W.is_zero():
            raise GIdenticallyZero("A B - eps eps' P Q vanishes identically")
        k, G = W.strip_z()
        if G.const < 0:
            eta = SignChoice.MINUS
            G = -G
    if G.is_zero():
        raise GIdenticallyZero("G vanishes identically: |A| = |Q| on the unit circle")
    return GConstruction(G, tag, k, eta, e, A, B, P, Q, eps, eps_p)


def even_multiplicity_check(G):
    """True iff every root of G on |z| = 1 has even multiplicity."""
    if G.is_zero():
        raise ValueError("even_multiplicity_check of the zero polynomial")
    for f, mult in squarefree_decomposition(G):
        if mult % 2 and count_on_unit_circle(f) > 0:
            return False
    return True


def _sample_nonroot(f, lo, hi):
    """A rational point of (lo, hi) where f does not vanish."""
    k = 1
    while True:
        for j in range(1, 2 * k, 2):
            x = lo + (hi - lo) * Fraction(j, 2 * k)
            if f.sign_at(x) != 0:
                return x
        k *= 2


def _nonneg_on_circle(N, d):
    """Decide T(x) >= 0 on [-2, 2] where N(z) = z^d T(z + 1/z).

    Returns (ok, witness, equality_count).  T keeps one sign on (-2, 2)
    minus its roots iff every root there has even multiplicity; one sample
    then settles the sign.  The witness is an x-interval (a, b) with
    T(a) T(b) < 0, or all of (-2, 2) when T is negative throughout.
    """
    T = circle_transform(N, center=d)
    lo, hi = Fraction(-2), Fraction(2)
    parts = squarefree_decomposition(T)
    rad = IntPoly([1])
    for f, _ in parts:
        rad = rad * f
    odd = [f for f, mult in parts if mult % 2 and f.degree() > 0]
    if rad.degree() > 0:
        chain = sturm_chain(rad)
        for a, b in isolate_real_roots(rad, lo, hi, chain):
            if b == hi and rad.sign_at(hi) == 0:
                continue
            if not any(count_real_roots(f, a, b) for f in odd):
                continue
            while a == lo or b == hi:
                mid = _sample_nonroot(rad, a, b)
                if count_real_roots(rad, a, mid, chain):
                    b = mid
                else:
                    a = mid
            return False, (a, b), None
    x = _sample_nonroot(T, lo, hi)
    if T.sign_at(x) < 0:
        return False, (lo, hi), None
    eq = 0
    if rad.degree() > 0:
        interior = count_real_roots(rad, lo, hi) - (1 if rad.sign_at(hi) == 0 else 0)
        eq = 2 * interior + (rad.sign_at(lo) == 0) + (rad.sign_at(hi) == 0)
    return True, None, eq


def sprime_criterion(A, P):
    """Exact check that |A| <= |Q| on |z| = 1 with finitely many equalities."""
    g = build_G(A, P)
    Q = g.Q
    s, h = P.degree(), A.degree()
    d = max(s, h)
    N = (Q * Q.reverse_to(s)).shift(d - s) - (A * A.reverse_to(h)).shift(d - h)
    if N.is_zero():
        raise GIdenticallyZero("|A| = |Q| identically on the unit circle")
    ok, witness, eq = _nonneg_on_circle(N, d)
    if not ok:
        raise CriterionFails(
            f"|Q|^2 - |A|^2 changes sign on the unit circle for A={A}, P={P}", witness)
    even = even_multiplicity_check(g.G)
    if not even:
        raise CriterionFails(f"G={g.G} has a simple root on the unit circle")
    return SPrimeCertificate(A, P, g, N, True, int(eq), even)


# -- leading series coefficients ---------------------------------------------------

def series_coefficients(num, den, count):
    """First ``count`` Taylor coefficients of num/den at 0 (requires den(0) = +-1)."""
    if abs(den.const) != 1:
        raise ValueError(f"denominator constant must be +-1, got {den.const}")
    out = []
    rem = list(num.coeffs) + [0] * count
    d = list(den.coeffs)
    for i in range(count):
        c = rem[i] * den.const
        out.append(c)
        for j, dj in enumerate(d):
            if i + j < len(rem):
                rem[i + j] -= c * dj
    return out


def lemma_coefficients(A, P):
    """Leading coefficients of A/Q, P/Q, B/Q for the pair (A, P), with the bounds they should meet.

    A/Q = u0 + u1 z + ..., P/Q = v0 + v1 z + ..., B/Q = 1 + b1 z + b2 z^2 + ...,
    and V = (B - Q)/z has degree d.  ``g0_formula`` tests G(0) = u1 - v1 + b1 u0;
    ``case_d_max`` tests u1 = u0^2 + u0 - 2, v1 = u1 + 1 (the d = s - 2 branch) and
    ``case_d_small`` tests u0^2 + u0 - 1 <= u1 <= u0^2 + u0 with u1 = v1; both
    also ask for b1 = 1, b2 = u0 + 1 and G(0) = u0.
    """
    g = build_G(A, P)
    Q, B = g.Q, g.B
    u0 = A.const
    u1 = series_coefficients(A, Q, 2)[1]
    v1 = series_coefficients(P, Q, 2)[1]
    bser = series_coefficients(B, Q, 3)
    b1, b2 = bser[1], bser[2]
    V = B - Q
    d = V.degree() - 1 if not V.is_zero() else None
    G0 = g.G.const
    tail = b1 == 1 and b2 == u0 + 1 and G0 == u0
    return {
        "u0": u0,
        "u1": u1,
        "v1": v1,
        "b1": b1,
        "b2": b2,
        "G0": G0,
        "s": P.degree(),
        "d": d,
        "case_tag": g.case_tag.value,
        "g0_formula": G0 == u1 - v1 + b1 * u0,
        "u1_fixed": u1 == u0 * u0 + u0 - 2,
        "v1_fixed": v1 == u0 * u0 + u0 - 1,
        "u1_range": u0 * u0 + u0 - 1 <= u1 <= u0 * u0 + u0,
        "u1_eq_v1": u1 == v1,
        "b1_one": b1 == 1,
        "b2_u0_plus_1": b2 == u0 + 1,
        "G0_u0": G0 == u0,
        "case_d_max": tail and u1 == u0 * u0 + u0 - 2 and v1 == u1 + 1,
        "case_d_small": tail and u0 * u0 + u0 - 1 <= u1 <= u0 * u0 + u0 and u1 == v1,
    }
