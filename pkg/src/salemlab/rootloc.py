"""Root localization relative to the unit circle.

Two kinds of answers live here.  Counts (inside / on / outside the unit
circle) are decided exactly: a Schur-Cohn reduction in integer arithmetic
for the open disk (with a Cauchy-index count after w = (z-1)/(z+1) when the
reduction degenerates) and a Sturm count after the substitution x = z + 1/z
for the circle itself.  Root *values* come from a simultaneous Aberth-Ehrlich
iteration whose output disks are certified afterwards by evaluating p and
p' exactly at the (double precision) centers.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional

import mpmath

from salemlab.errors import Degenerate, PrecisionUnreachable
from salemlab.polyint import (
    ONE,
    IntPoly,
    div_exact,
    poly_gcd,
    prem,
    squarefree_decomposition,
)

log = logging.getLogger(__name__)

DEFAULT_PRECISION = 1e-12

INSIDE = "inside"
OUTSIDE = "outside"
ON = "on"
STRADDLES = "straddles"


@dataclass(frozen=True)
class CertifiedRoot:
    """A disk guaranteed to contain exactly one root of a squarefree polynomial."""

    center: complex
    radius: float
    side: str = STRADDLES
    flagged: bool = False  # radius above the requested target precision

    @property
    def modulus(self):
        return abs(self.center)


@dataclass
class RootProfile:
    degree: int
    roots: List[CertifiedRoot]
    inside_count: int
    on_count: int
    outside_count: int
    exact: bool
    distinct_roots: int = field(default=0)

    def __post_init__(self):
        total = self.inside_count + self.on_count + self.outside_count
        if total != self.degree:
            raise Degenerate(
                f"inconsistent profile: {self.inside_count}+{self.on_count}+"
                f"{self.outside_count} != {self.degree}"
            )


class MahlerMeasure(NamedTuple):
    value: float
    error: float


# -- exact helpers -------------------------------------------------------------

def squarefree_part(p):
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if p.is_zero():
        raise ValueError("squarefree_part of the zero polynomial")
    if p.degree() <= 0:
        return ONE
    g = poly_gcd(p, p.derivative())
    return div_exact(p.primitive(), g).primitive()


def sturm_chain(f):
    """Sturm sequence of f (integer form, signs preserved)."""
    chain = [f, f.derivative()]
    while chain[-1].degree() > 0:
        r = prem(chain[-2], chain[-1])
        if r.is_zero():
            break
        r = -r
        g = r.content()
        chain.append(IntPoly([c // g for c in r.coeffs]))
    return chain


def _variations(chain, x):
    last = 0
    count = 0
    for q in chain:
        s = q.sign_at(x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def _variations_at_infinity(chain, sign):
    last = 0
    count = 0
    for q in chain:
        if q.is_zero():
            continue
        s = 1 if q.lead > 0 else -1
        if sign < 0 and q.degree() % 2:
            s = -s
        if last and s != last:
            count += 1
        last = s
    return count


def count_real_roots(f, a, b, chain=None):
    """Distinct real roots of squarefree f in the half-open interval (a, b]."""
    if chain is None:
        chain = sturm_chain(f)
    return _variations(chain, a) - _variations(chain, b)


def _cauchy_bound(f):
    lead = abs(f.lead)
    return 1 + max(Fraction(abs(c), lead) for c in f.coeffs[:-1]) if f.degree() > 0 else Fraction(1)


def isolate_real_roots(f, lo, hi, chain=None):
    """Disjoint intervals (a, b] each holding one root of squarefree f in (lo, hi].

    Endpoints are rationals; interval endpoints other than lo/hi are never roots.
    """
    if chain is None:
        chain = sturm_chain(f)
    out = []
    stack = [(Fraction(lo), Fraction(hi))]
    while stack:
        a, b = stack.pop()
        n = count_real_roots(f, a, b, chain)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = _nonroot_between(f, a, b)
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort()
    return out


def _nonroot_between(f, a, b):
    mid = (a + b) / 2
    k = 1
    while f.sign_at(mid) == 0:
        mid = a + (b - a) * Fraction(k, 2 * k + 1)
        k += 1
    return mid


def circle_transform(g, center=None):
    """T with g(z) = z^d T(z + 1/z) for a reciprocal g of even degree 2d.

    ``center`` overrides d for polynomials palindromic about z^d whose
    outer coefficients vanish.
    """
    if center is None:
        n = g.degree()
        if n % 2:
            raise ValueError("circle_transform needs even degree")
        d = n // 2
    else:
        d = center
    c = [g[i] for i in range(2 * d + 1)]
    # V_0 = 1 for the constant slot, V_1 = x, V_{k+1} = x V_k - V_{k-1} (with V_0 = 2)
    t = IntPoly([c[d]])
    v_prev, v = IntPoly([2]), IntPoly([0, 1])
    x = IntPoly([0, 1])
    for k in range(1, d + 1):
        t = t + v * c[d + k]
        v_prev, v = v, x * v - v_prev
    return t


def _split_unit_roots(g):
    """Divide out z - 1 and z + 1; return (mult at 1, mult at -1, rest)."""
    m_pos = m_neg = 0
    zm1, zp1 = IntPoly([-1, 1]), IntPoly([1, 1])
    while g.degree() > 0 and g(1) == 0:
        g = div_exact(g, zm1)
        m_pos += 1
    while g.degree() > 0 and g(-1) == 0:
        g = div_exact(g, zp1)
        m_neg += 1
    return m_pos, m_neg, g


def circle_part(p):
    """gcd(p, reverse p) after removing z factors: holds every circle root of p."""
    _, q = p.strip_z()
    return poly_gcd(q, q.reverse())


def count_on_unit_circle(p):
    """Exact number of roots with |z| = 1, counted with multiplicity."""
    if p.is_zero():
        raise ValueError("zero polynomial has no finite root set")
    if p.degree() <= 0:
        return 0
    g = circle_part(p)
    if g.degree() <= 0:
        return 0
    m_pos, m_neg, rest = _split_unit_roots(g)
    total = m_pos + m_neg
    if rest.degree() <= 0:
        return total
    t = circle_transform(rest)
    for f, mult in squarefree_decomposition(t):
        total += 2 * mult * count_real_roots(f, Fraction(-2), Fraction(2))
    return total


def _schur_cohn(f):
    """Roots of f in |z| < 1; f(0) != 0 and f has no root on |z| = 1."""
    count_offset = 0
    sign = 1
    # N(f) = N(Tf) when |a0| > |an|, else deg f - N(Tf); unrolled iteratively
    while f.degree() > 0:
        n = f.degree()
        a0, an = f.const, f.lead
        delta = a0 * a0 - an * an
        if delta == 0:
            raise Degenerate("Schur-Cohn step with |f(0)| = |lead f|")
        t = f * a0 - f.reverse() * an
        g = t.content()
        t = IntPoly([c // g for c in t.coeffs])
        if delta < 0:
            count_offset += sign * n
            sign = -sign
        f = t
    return count_offset


def _signed_remainder_variations(a, b, sign):
    """Sign variations at +-infinity of the signed remainder sequence of (a, b)."""
    seq = [a, b]
    while not seq[-1].is_zero():
        r = prem(seq[-2], seq[-1])
        if r.is_zero():
            break
        g = r.content()
        seq.append(IntPoly([-c // g for c in r.coeffs]))
    return _variations_at_infinity([q for q in seq if not q.is_zero()], sign)


def _cauchy_index_inside(h):
    """Roots of h in |z| < 1 via w = (z-1)/(z+1) and a Cauchy index.

    Needs h without roots on |z| = 1.  Exact in every case, including the
    ones where the Schur-Cohn recursion hits |f(0)| = |lead f|.
    """
    n = h.degree()
    one_p, one_m = IntPoly([1, 1]), IntPoly([1, -1])
    g = IntPoly()
    for k, c in enumerate(h.coeffs):
        if c:
            g = g + (one_p ** k) * (one_m ** (n - k)) * c
    # g(iy) = U(y) + i V(y)
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    for k, c in enumerate(g.coeffs):
        unit = (1, 0, -1, 0)[k % 4], (0, 1, 0, -1)[k % 4]
        u[k] += c * unit[0]
        v[k] += c * unit[1]
    U, V = IntPoly(u), IntPoly(v)
    if V.is_zero():
        arg_turns = 0
    elif U.is_zero():
        arg_turns = 0
    elif U.degree() > V.degree():
        # change of arg / pi = -Ind(V/U)
        arg_turns = -(_signed_remainder_variations(U, V, -1)
                      - _signed_remainder_variations(U, V, 1))
    else:
        arg_turns = (_signed_remainder_variations(V, U, -1)
                     - _signed_remainder_variations(V, U, 1))
    deg_g = g.degree()
    return (deg_g + arg_turns) // 2


def count_inside_unit_disk(p):
    """(number of roots with |z| < 1, exact flag), multiplicity counted."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    k, q = p.strip_z()
    if q.degree() <= 0:
        return k, True
    g = circle_part(q)
    h = div_exact(q, g) if g.degree() > 0 else q
    on = count_on_unit_circle(g) if g.degree() > 0 else 0
    # roots of g off the circle pair up as r, 1/r
    inside_g = (max(g.degree(), 0) - on) // 2
    try:
        return k + inside_g + _schur_cohn(h), True
    except Degenerate:
        log.debug("Schur-Cohn degenerate on %s; Cauchy-index path", h)
    try:
        return k + inside_g + _cauchy_index_inside(h), True
    except (ZeroDivisionError, Degenerate):
        log.debug("Cauchy-index path failed on %s; numeric fallback", h)
    inside_h = 0
    for f, mult in squarefree_decomposition(h):
        for r in all_roots(f):
            if r.side == INSIDE:
                inside_h += mult
            elif r.side == STRADDLES:
                raise Degenerate(f"cannot separate a root of {f} from the unit circle")
    return k + inside_g + inside_h, False


# -- numeric root finding ------------------------------------------------------

def _aberth_float(coeffs, max_iter=600, tol=1e-15):
    n = len(coeffs) - 1
    lead = coeffs[-1]
    a = [c / lead for c in coeffs]
    da = [i * a[i] for i in range(1, n + 1)]
    bound = 1 + max(abs(c) for c in a[:-1])
    # Fujiwara-style radius for the start circle
    rad = min(bound, 2 * max(abs(a[n - k]) ** (1.0 / k) for k in range(1, n + 1)) or 1.0)
    z = [rad * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]
    for _ in range(max_iter):
        moved = 0.0
        for k in range(n):
            zk = z[k]
            pv = 0j
            for c in reversed(a):
                pv = pv * zk + c
            dv = 0j
            for c in reversed(da):
                dv = dv * zk + c
            if pv == 0:
                continue
            ratio = pv / dv if dv != 0 else complex(1e-3, 1e-3)
            s = 0j
            for j in range(n):
                if j != k:
                    diff = zk - z[j]
                    if diff != 0:
                        s += 1.0 / diff
            denom = 1 - ratio * s
            w = ratio / denom if denom != 0 else ratio
            z[k] = zk - w
            moved = max(moved, abs(w) / max(1.0, abs(zk)))
        if moved < tol:
            break
    return z


def _aberth_mp(coeffs, dps, max_iter=400):
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(coeffs)],
                                 maxsteps=max_iter, extraprec=4 * dps, error=False)
        return [complex(r) for r in roots]


def _certify(p, dp, center):
    """Exact Newton-type inclusion radius n|p(c)|/|p'(c)| at a double center."""
    n = p.degree()
    x, y = Fraction(center.real), Fraction(center.imag)
    den = max(x.denominator, y.denominator)
    a, b = int(x * den), int(y * den)

    def scaled(poly):
        # Gaussian-integer Horner for poly(c) * den^deg
        re, im = 0, 0
        dpow = 1
        for c in reversed(poly.coeffs):
            re, im = re * a - im * b + c * dpow, re * b + im * a
            dpow *= den
        return re, im

    pr, pi = scaled(p)
    if pr == 0 and pi == 0:
        return 0.0
    qr, qi = scaled(dp)
    nq = qr * qr + qi * qi
    if nq == 0:
        return math.inf
    ratio_sq = Fraction(pr * pr + pi * pi, nq * den * den)
    return n * math.sqrt(float(ratio_sq)) * (1 + 1e-13) + 5e-324


def _side(center, radius):
    x, y = Fraction(center.real), Fraction(center.imag)
    r = Fraction(radius)
    m2 = x * x + y * y
    if r < 1 and m2 < (1 - r) ** 2:
        return INSIDE
    if m2 > (1 + r) ** 2:
        return OUTSIDE
    return STRADDLES


def _disjoint(centers, radii):
    n = len(centers)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(centers[i] - centers[j]) <= (radii[i] + radii[j]) * (1 + 1e-12):
                return False
    return True


def all_roots(p, target_precision=DEFAULT_PRECISION):
    """Certified disks around all roots of a squarefree p (degree >= 1).

    Each disk is centred on a double-precision approximation; the radius
    n|p(c)|/|p'(c)| is computed from an exact evaluation, so the union of
    the pairwise disjoint disks provably contains every root.
    """
    if p.degree() < 1:
        raise ValueError("all_roots needs degree >= 1")
    k, q = p.strip_z()
    if k > 1:
        raise ValueError("all_roots needs a squarefree polynomial (z^2 divides p)")
    dp = p.derivative()
    n = q.degree()
    centers = []
    if n >= 1:
        attempts = [("double", None), ("mp", 40), ("mp", 90)]
        for kind, dps in attempts:
            if kind == "double":
                try:
                    centers = _aberth_float([float(c) for c in q.coeffs])
                except (OverflowError, ZeroDivisionError):
                    continue
            else:
                centers = _aberth_mp(list(q.coeffs), dps)
            if k:
                centers = centers + [0j]
            radii = [_certify(p, dp, c) for c in centers]
            if all(math.isfinite(r) for r in radii) and _disjoint(centers, radii):
                if max(radii) <= target_precision:
                    break
            log.debug("root certification retry after %s attempt on %s", kind, p)
        else:
            if not (all(math.isfinite(r) for r in radii) and _disjoint(centers, radii)):
                raise PrecisionUnreachable(f"could not certify the roots of {p}")
    else:
        centers, radii = [0j], [0.0]
    out = []
    for c, r in zip(centers, radii):
        # snap exact reals
        out.append(CertifiedRoot(center=c, radius=r, side=_side(c, r),
                                 flagged=r > target_precision))
    out.sort(key=lambda root: (-abs(root.center), root.center.real, root.center.imag))
    return out


def circle_classification(p):
    """Exact inside/on/outside counts plus certified root disks."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    deg = p.degree()
    if deg == 0:
        return RootProfile(0, [], 0, 0, 0, True, 0)
    inside, exact = count_inside_unit_disk(p)
    on = count_on_unit_circle(p)
    outside = deg - inside - on
    sq = squarefree_part(p)
    roots = all_roots(sq)
    sq_inside = sum(r.side == INSIDE for r in roots)
    sq_outside = sum(r.side == OUTSIDE for r in roots)
    sq_on = count_on_unit_circle(sq)
    if sq_on + sq_inside + sq_outside == len(roots):
        roots = [r if r.side != STRADDLES else
                 CertifiedRoot(r.center, r.radius, ON, r.flagged) for r in roots]
    if outside < 0:
        raise Degenerate(f"negative outside count for {p}")
    return RootProfile(deg, roots, inside, on, outside, exact, len(roots))


def mahler_measure(p):
    """Mahler measure |lead| * prod max(1, |root|) with an error bound."""
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    value = float(abs(p.lead))
    log_err = 0.0
    count = 0
    for f, mult in squarefree_decomposition(p):
        for r in all_roots(f):
            m = abs(r.center)
            if m > 1:
                value *= m ** mult
            log_err += mult * r.radius
            count += mult
    error = value * (math.expm1(log_err) + 4 * (count + 1) * 2.2e-16)
    return MahlerMeasure(value, error)


def _newton_real(f, x):
    df = f.derivative()
    cf = [float(c) for c in f.coeffs]
    cd = [float(c) for c in df.coeffs]
    for _ in range(60):
        pv = 0.0
        for c in reversed(cf):
            pv = pv * x + c
        dv = 0.0
        for c in reversed(cd):
            dv = dv * x + c
        if dv == 0:
            break
        step = pv / dv
        x -= step
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    return x


def max_real_root_above_one(p, tol=DEFAULT_PRECISION):
    """Largest real root in (1, inf) to within tol, or None."""
    if p.is_zero() or p.degree() < 1:
        return None
    _, q = p.strip_z()
    if q.degree() < 1:
        return None
    f = squarefree_part(q)
    chain = sturm_chain(f)
    lo = Fraction(1)
    hi = Fraction(math.ceil(_cauchy_bound(f))) + 1
    if count_real_roots(f, lo, hi, chain) == 0:
        return None
    if f.sign_at(lo) == 0:
        lo = _first_nonroot_above(f, lo, hi, chain)
    while count_real_roots(f, lo, hi, chain) > 1:
        mid = _nonroot_between(f, lo, hi)
        if count_real_roots(f, mid, hi, chain) >= 1:
            lo = mid
        else:
            hi = mid
    if f.sign_at(hi) == 0:
        return float(hi)
    # one root in (lo, hi) with a sign change; Newton then certify by signs
    x = _newton_real(f, float((lo + hi) / 2))
    delta = Fraction(max(tol / 4, 4e-16 * abs(x)))
    if lo < Fraction(x) - delta and Fraction(x) + delta < hi:
        a, b = Fraction(x) - delta, Fraction(x) + delta
        sa, sb = f.sign_at(a), f.sign_at(b)
        if sa * sb < 0 or sa == 0 or sb == 0:
            return x
    slo = f.sign_at(lo)
    while hi - lo > Fraction(tol) / 4:
        mid = (lo + hi) / 2
        sm = f.sign_at(mid)
        if sm == 0:
            return float(mid)
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def _first_nonroot_above(f, lo, hi, chain):
    # a root sits exactly at lo; step right to a point with no roots in between
    step = (hi - lo) / 2
    while True:
        cand = lo + step
        if f.sign_at(cand) != 0 and count_real_roots(f, lo, cand, chain) == 0:
            return cand
        step /= 2
