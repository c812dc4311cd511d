"""Explicit polynomial families, the Salem and Boyd constructions, identity checks.

Every family is generated from its displayed (often factored) formula; the
products with (1 - z) are divided out exactly, so a transcription slip shows
up as NotDivisible rather than as a silently wrong element.  P is always
derived from Q by reversal with P(0) >= 1, and G comes from build_G.
"""

import enum
import itertools
import json
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from salemlab.classify import NumberClass, Verdict, build_G, classify_number
from salemlab.errors import NoAssociation, NotDivisible
from salemlab.polyint import (
    ONE,
    IntPoly,
    Reciprocity,
    SignChoice,
    cyclotomic,
    cyclotomic_indices_up_to_degree,
    div_exact,
    divides,
    is_reciprocal,
    reciprocal_Q,
)
from salemlab.rootloc import (
    circle_part,
    count_inside_unit_disk,
    count_on_unit_circle,
    max_real_root_above_one,
)

log = logging.getLogger(__name__)

Z = IntPoly([0, 1])
ONE_MINUS_Z = IntPoly([1, -1])
ONE_PLUS_Z = IntPoly([1, 1])

# the polynomial of the smallest known Salem number
TAU0_POLY = IntPoly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])


def mono(k, c=1):
    return IntPoly.monomial(k, c)


def poly(*coeffs):
    return IntPoly(coeffs)


class Family(str, enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"
    GAMMA4 = "gamma4"
    SPRIME1_ALPHA = "sprime1_alpha"
    SPRIME1_BETA = "sprime1_beta"
    SPRIME1_GAMMA4 = "sprime1_gamma4"
    UV_BETA = "uv_beta"
    UV_ALPHA = "uv_alpha"


@dataclass
class FamilyElement:
    family_tag: Family
    u0: int
    v0: Optional[int]
    s: int
    eps: Optional[SignChoice]
    A: IntPoly
    B: IntPoly
    P: IntPoly
    Q: IntPoly
    G: IntPoly
    variant: Optional[str] = None  # A1/A2 for the u0 = 1 families, uv kind
    g: object = field(default=None, repr=False)

    @property
    def params(self):
        d = {"family": self.family_tag.value, "u0": self.u0, "s": self.s}
        if self.v0 is not None:
            d["v0"] = self.v0
        if self.eps is not None:
            d["eps"] = int(self.eps)
        if self.variant is not None:
            d["variant"] = self.variant
        return d

    def to_dict(self):
        d = dict(self.params)
        for name in ("A", "B", "P", "Q", "G"):
            d[name] = str(getattr(self, name))
        return d


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    params: dict
    holds: bool
    difference: IntPoly

    def to_dict(self):
        return {
            "identity_id": self.identity_id,
            "params": self.params,
            "holds": self.holds,
            "difference": str(self.difference),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=False, separators=(",", ":"))


# -- element assembly ---------------------------------------------------------

def _p_from_q(Q):
    """P = +-reverse(Q) with P(0) >= 1 (Q(0) = 1 and deg Q = s assumed)."""
    if Q.const != 1:
        raise ValueError(f"Q(0) must be 1, got {Q.const}")
    P = Q.reverse()
    return P if P.const > 0 else -P


def _element(tag, u0, s, A, Q, v0=None, eps=None, variant=None):
    P = _p_from_q(Q)
    if P.degree() != s:
        raise ValueError(f"{tag.value}: degree of P is {P.degree()}, expected {s}")
    g = build_G(A, P)
    fe = FamilyElement(tag, u0, v0, s, eps, A, g.B, P, g.Q, g.G, variant, g)
    if g.Q != Q:
        raise ValueError(f"{tag.value}: reversal round trip changed Q")
    expected_p0 = v0 if v0 is not None else u0
    if A.const != u0 or Q.const != 1 or P.const != expected_p0:
        raise ValueError(f"{tag.value}: normalization A(0)={A.const}, P(0)={P.const}")
    return fe


def _check_range(name, value, lo):
    if value < lo:
        raise ValueError(f"{name} must be >= {lo}, got {value}")


def beta_family(u0, s):
    _check_range("u0", u0, 2)
    _check_range("s", s, 2)
    A = div_exact(poly(u0) - mono(s - 1) - mono(s, u0 - 1), ONE_MINUS_Z)
    Q = div_exact(poly(1, -(u0 + 1)) + mono(s + 1, u0), ONE_MINUS_Z)
    return _element(Family.BETA, u0, s, A, Q)


def gamma_family(u0, s, eps):
    _check_range("u0", u0, 2)
    _check_range("s", s, 3)
    eps = SignChoice.of(eps)
    e = int(eps)
    A = poly(u0, u0 - 2, -1) - mono(s - 2, e) * poly(u0, u0 - 1, -1)
    Q = poly(1, -u0, -u0) - mono(s - 2, e) * poly(1, -(u0 - 1), -u0)
    return _element(Family.GAMMA, u0, s, A, Q, eps=eps)


def gamma4_element(u0):
    """The degree-4 element; Q is the version consistent with A(0) = P(0) = u0."""
    _check_range("u0", u0, 2)
    A = poly(u0, u0 - 1, -u0, -(u0 - 1), 1)
    Q = poly(1, -u0, -(u0 + 1), u0 - 1, u0)
    return _element(Family.GAMMA4, u0, 4, A, Q, eps=SignChoice.PLUS)


def alpha_family(u0, s):
    """s >= 2; at s = 2 the general formula reduces to the displayed extension."""
    _check_range("u0", u0, 2)
    _check_range("s", s, 2)
    A = poly(u0, -1) + mono(s - 1, u0) - mono(s)
    Q = poly(1, -(u0 + 1)) + mono(s - 1) - mono(s, u0)
    return _element(Family.ALPHA, u0, s, A, Q)


def sprime1_families(kind, variant="A1", s=None):
    """The u0 = 1 families: kind in {alpha, beta, gamma4}, variant in {A1, A2}."""
    kind = str(kind)
    if variant not in ("A1", "A2"):
        raise ValueError(f"variant must be A1 or A2, got {variant}")
    if kind == "gamma4":
        A = poly(1, 0, -1, 0, 1)
        Q = poly(1, -1, -2, 0, 1)
        return _element(Family.SPRIME1_GAMMA4, 1, 4, A, Q, eps=SignChoice.PLUS)
    if s is None:
        raise ValueError(f"{kind} needs s")
    _check_range("s", s, 2)
    if kind == "beta":
        if variant == "A1":
            A = div_exact(ONE - mono(s - 1), ONE_MINUS_Z)
        else:
            A = div_exact(poly(1, -1) - mono(s) + mono(s + 1), ONE_MINUS_Z)
        Q = div_exact(poly(1, -2) + mono(s + 1), ONE_MINUS_Z)
        return _element(Family.SPRIME1_BETA, 1, s, A, Q, variant=variant)
    if kind == "alpha":
        A = poly(1, -1) + mono(s - 1)
        if variant == "A2":
            A = A - mono(s)
        Q = poly(1, -2) + mono(s - 1) - mono(s)
        return _element(Family.SPRIME1_ALPHA, 1, s, A, Q, variant=variant)
    raise ValueError(f"unknown kind {kind!r}")


def uv_families(u0, v0, kind, s=None):
    """Elements with A(0) = u0, P(0) = v0: kind in {beta, smallest_h, alpha_ext}."""
    _check_range("u0", u0, 2)
    if not 1 <= v0 <= u0 - 1:
        raise ValueError(f"v0 must lie in [1, u0-1], got {v0}")
    kind = str(kind)
    if kind == "beta":
        _check_range("s", s, 2)
        A = div_exact(poly(u0) - mono(s - 1, u0 - v0 + 1) - mono(s, v0 - 1), ONE_MINUS_Z)
        Q = div_exact(poly(1, -(u0 + 1)) + mono(s, u0 - v0) + mono(s + 1, v0), ONE_MINUS_Z)
        return _element(Family.UV_BETA, u0, s, A, Q, v0=v0, variant="beta")
    if kind == "smallest_h":
        A = poly(u0, -(v0 + 1), 1)
        Q = poly(1, -(u0 + 1), v0)
        return _element(Family.UV_ALPHA, u0, 2, A, Q, v0=v0, variant="smallest_h")
    if kind == "alpha_ext":
        _check_range("s", s, 2)
        A = poly(u0, 1) - mono(s - 1, v0 + 2) + mono(s)
        Q = poly(1, -(u0 + 2)) + mono(s - 1) + mono(s, v0)
        return _element(Family.UV_ALPHA, u0, s, A, Q, v0=v0, variant="alpha_ext")
    raise ValueError(f"unknown kind {kind!r}")


def make_element(family, u0=None, s=None, eps=None, v0=None, variant=None):
    """Dispatch by family tag (used by the CLI and the sweeps)."""
    family = Family(family)
    if family == Family.BETA:
        return beta_family(u0, s)
    if family == Family.GAMMA:
        return gamma_family(u0, s, eps)
    if family == Family.GAMMA4:
        return gamma4_element(u0)
    if family == Family.ALPHA:
        return alpha_family(u0, s)
    if family == Family.SPRIME1_BETA:
        return sprime1_families("beta", variant or "A1", s)
    if family == Family.SPRIME1_ALPHA:
        return sprime1_families("alpha", variant or "A1", s)
    if family == Family.SPRIME1_GAMMA4:
        return sprime1_families("gamma4", variant or "A1")
    if family == Family.UV_BETA:
        return uv_families(u0, v0, "beta", s)
    return uv_families(u0, v0, variant or "alpha_ext", s)


def family_sweep(u0_values=(2, 3, 4, 5), s_max=8):
    """All family elements of the standard identity sweep, in a fixed order."""
    out = []
    for u0 in u0_values:
        for s in range(2, s_max + 1):
            out.append(beta_family(u0, s))
        for s in range(3, s_max + 1):
            for eps in (1, -1):
                out.append(gamma_family(u0, s, eps))
        out.append(gamma4_element(u0))
        for s in range(2, s_max + 1):
            out.append(alpha_family(u0, s))
        for v0 in range(1, u0):
            for s in range(2, s_max + 1):
                out.append(uv_families(u0, v0, "beta", s))
            out.append(uv_families(u0, v0, "smallest_h"))
            for s in range(2, s_max + 1):
                out.append(uv_families(u0, v0, "alpha_ext", s))
    for s in range(2, s_max + 1):
        for variant in ("A1", "A2"):
            out.append(sprime1_families("beta", variant, s))
            out.append(sprime1_families("alpha", variant, s))
    out.append(sprime1_families("gamma4"))
    return out


# -- identity ledger ----------------------------------------------------------

def _report(ident, fe, lhs, rhs):
    diff = lhs - rhs
    return IdentityReport(ident, fe.params, diff.is_zero(), diff)


def check_identities(fe):
    """Evaluate every displayed identity attached to fe's family."""
    A, B, P, Q, G = fe.A, fe.B, fe.P, fe.Q, fe.G
    s, u0, v0 = fe.s, fe.u0, fe.v0
    zA, zP, zB = Z * A, Z * P, Z * B
    tag = fe.family_tag
    out = []
    add = out.append
    if tag == Family.BETA:
        one_s = ONE - mono(s)
        add(_report("Eq20.QzA", fe, Q + zA, one_s))
        add(_report("Eq20.PmB", fe, P - B, one_s))
        add(_report("Eq20.QzP", fe, Q + zP, ONE - mono(s + 1)))
        add(_report("Eq20.G", fe, G, one_s * one_s * u0))
        add(_report("Eq30.QzA", fe, Q + zA, one_s))
        add(_report("Eq30.PmB", fe, P - B, one_s))
        add(_report("Eq30.QzP", fe, Q + zP, ONE - mono(s + 1)))
        add(_report("Eq31.QzA", fe, Q + zA, one_s))
        add(_report("Eq31.PmB", fe, P - B, one_s))
        add(_report("Eq31.QzP", fe, Q + zP, ONE - mono(s + 1)))
        if s == 2:
            add(_report("Eq5.A", fe, ONE_MINUS_Z * A, poly(u0, -1, -(u0 - 1))))
            add(_report("Eq5.Q", fe, ONE_MINUS_Z * Q, poly(1, -(u0 + 1), 0, u0)))
            add(_report("Eq5.G", fe, G, poly(1, 0, -1) ** 2 * u0))
    elif tag == Family.GAMMA:
        e = int(fe.eps)
        v = ONE - mono(s - 2, e)
        add(_report("Eq21.QzA", fe, Q + zA,
                    ONE_PLUS_Z * (poly(1, -1, -1) - mono(s - 2, e) * poly(1, 0, -1))))
        add(_report("Eq21.QzP", fe, Q + zP,
                    poly(1, 0, -1, -1) - mono(s - 2, e) * poly(1, 1, 0, -1)))
        add(_report("Eq21.G", fe, G, (ONE_PLUS_Z * v) ** 2 * (u0 - 1)))
        add(_report("L5.G", fe, G, (ONE_MINUS_Z * v) ** 2))
        add(_report("L5.AmQ", fe, A - Q, ONE_PLUS_Z ** 2 * v * (u0 - 1)))
        if s == 10 and e == -1:
            add(_report("Rem4.tau0", fe, Q + zP, TAU0_POLY))
            add(_report("Rem4.tau0_factor", fe, Q + zP, ONE_MINUS_Z * TAU0_POLY))
    elif tag == Family.GAMMA4:
        add(_report("Eq22.QzA", fe, Q + zA, poly(1, 0, -1) * poly(1, 0, -1, -1)))
        add(_report("Eq22.QzP", fe, Q + zP,
                    poly(1, 0, -1, -1) - mono(2) * poly(1, 1, 0, -1)))
        add(_report("Eq22.G", fe, G, (ONE_MINUS_Z * poly(1, 0, -1)) ** 2 * u0))
        add(_report("L5.G4", fe, G, (ONE_PLUS_Z * poly(1, 0, -1)) ** 2))
        add(_report("Th1.Q4", fe, Q, poly(1, -u0, -(u0 + 1), -(u0 - 1), 1)))
    elif tag == Family.ALPHA:
        rhs_a = poly(1, -1, -1) + mono(s - 1) * poly(1, 0, -1)
        add(_report("Eq23.QzA", fe, Q + zA, rhs_a))
        add(_report("Eq23.QzA.line2", fe, Q + zA, rhs_a))
        add(_report("Eq23.QzP", fe, Q + zP, poly(1, -1, -1) + mono(s - 1) * poly(1, 1, -1)))
        add(_report("Eq23.G", fe, G, A - mono(s - 2) * Q))
    elif tag == Family.SPRIME1_BETA and fe.variant == "A1":
        one_s = ONE - mono(s)
        add(_report("Eq30bis.QzA", fe, Q + zA, one_s))
        add(_report("Eq30bis.PmzB", fe, P - zB, one_s))
        add(_report("Eq30bis.QzP", fe, Q + zP, ONE - mono(s + 1)))
        if s >= 3:
            add(_report("S1beta.Qz3A", fe, Q + mono(3) * A, poly(1, -1, -1) + mono(s + 1)))
    elif tag == Family.SPRIME1_ALPHA and fe.variant == "A2":
        # the accumulation-point discussion writes this variant as A_1
        add(_report("S1alpha.QzA", fe, Q + zA,
                    poly(1, -1, -1) + mono(s - 1) * poly(1, 0, -1)))
        if s == 3:
            add(_report("S1alpha.Qz3A", fe, Q + mono(3) * A,
                        poly(1, -2, 1) - mono(4) * poly(1, -1, 1)))
    elif tag == Family.UV_BETA:
        one_s = ONE - mono(s)
        add(_report("Th3.QzA", fe, Q + zA, one_s))
        # B at the nominal degree h = s - 1 (A drops a degree when v0 = 1)
        add(_report("Th3.PmB", fe, P - A.reverse_to(s - 1), one_s))
        add(_report("Th3.G", fe, G, one_s * one_s * v0))
        add(_report("Eq31.uv.QzP", fe, Q + zP, ONE - mono(s + 1)))
        if s == 2:
            add(_report("Eq27.A", fe, ONE_MINUS_Z * A, poly(u0, -(u0 - v0 + 1), v0 - 1)))
            add(_report("Eq27.Q", fe, ONE_MINUS_Z * Q, poly(1, -(u0 + 1), u0 - v0, v0)))
    elif tag == Family.UV_ALPHA:
        rhs = ONE_MINUS_Z ** 2 * (ONE + mono(s - 1))
        if fe.variant == "smallest_h":
            add(_report("Th3.QzA", fe, Q + zA, rhs))
            add(_report("Th3.BzP", fe, B + zP, rhs))
            add(_report("Th3.G", fe, G, poly(1, 0, -1) ** 2 * (u0 - v0)))
            add(_report("S3.A", fe, A, poly(u0, -v0, 1)))
            add(_report("S3.G", fe, G, poly(1, 0, -1) * (u0 - v0)))
        else:
            c = u0 + v0 + 2
            add(_report("Eq28.QzA", fe, Q + zA, rhs))
            add(_report("Eq28.BzP", fe, B + zP, rhs))
            add(_report("Eq28.QmzP", fe, Q - zP,
                        poly(1, -c, -1) + mono(s - 1) * poly(1, c, -1)))
            add(_report("Eq28.G", fe, G,
                        (ONE_MINUS_Z * (ONE + mono(s - 1))) ** 2 * (u0 - v0)))
    return out


def accumulation_polys(s):
    """The three displayed families of limit-point polynomials valid at s."""
    out = []
    if s >= 2:
        out.append(poly(1, 0, -1) + mono(s - 1) * poly(1, 1, -1))
    if s >= 3:
        out.append(ONE - mono(s - 1) * poly(1, 1, -1))
    out.append(poly(1, -1, 1) - mono(4) * poly(1, -2, 1))
    return out


# -- Salem construction -------------------------------------------------------

@dataclass
class SalemConstruction:
    P: IntPoly
    Q: IntPoly
    m: int
    eta: SignChoice
    W: IntPoly
    U: IntPoly
    R: IntPoly
    tau: Optional[float]
    classification: Optional[NumberClass] = None

    @property
    def verdict(self):
        return self.classification.verdict if self.classification else None

    def to_dict(self):
        return {
            "m": self.m,
            "eta": int(self.eta),
            "P": str(self.P),
            "Q": str(self.Q),
            "W": str(self.W),
            "U": str(self.U),
            "R": str(self.R),
            "tau": self.tau,
            "verdict": self.verdict.value if self.verdict else None,
        }


def cyclotomic_factorization(W):
    """(U, R, indices): U the full cyclotomic part of W with U(0) = 1, R = W / U."""
    U = ONE
    R = W
    indices = []
    c = circle_part(W)
    if c.degree() > 0 and count_on_unit_circle(c) > 0:
        for n in cyclotomic_indices_up_to_degree(c.degree()):
            phi = cyclotomic(n)
            if phi.degree() > c.degree():
                continue
            while divides(phi, c):
                c = div_exact(c, phi)
                R = div_exact(R, phi)
                U = U * phi
                indices.append(n)
            if c.degree() <= 0:
                break
    if U.const < 0:
        U, R = -U, -R
    return U, R, indices


def _check_pisot_orientation(P):
    if abs(P.lead) != 1 or P.const < 1:
        raise ValueError(f"P must have P(0) >= 1 and a unit leading coefficient, got {P}")


def salem_construct(P, m, eta, classify=True):
    """W = Q + eta z^m P split as U R with U cyclotomic."""
    _check_pisot_orientation(P)
    if m < 1:
        raise ValueError("m must be >= 1")
    eta = SignChoice.of(eta)
    Q, _ = reciprocal_Q(P)
    W = Q + P.shift(m) * int(eta)
    U, R, _ = cyclotomic_factorization(W)
    tau = max_real_root_above_one(R) if R.degree() >= 1 else None
    nc = classify_number(R) if classify and R.degree() >= 1 else None
    return SalemConstruction(P, Q, m, eta, W, U, R, tau, nc)


# -- Boyd association ------------------------------------------------------------

@dataclass(frozen=True)
class Association:
    U: IntPoly
    P: IntPoly
    Q: IntPoly
    m: int
    eta: SignChoice
    theta: float

    def to_dict(self):
        return {"U": str(self.U), "P": str(self.P), "Q": str(self.Q),
                "m": self.m, "eta": int(self.eta), "theta": self.theta}


@dataclass
class BoydSearch:
    associations: List[Association]
    candidates_examined: int
    truncated: bool


def cyclotomic_products(degree, max_multiplicity=2, min_index=1):
    """All products of cyclotomic polynomials of exact total degree, as index tuples."""
    if degree == 0:
        yield ()
        return
    for n in cyclotomic_indices_up_to_degree(degree):
        if n < min_index:
            continue
        d = cyclotomic(n).degree()
        for mult in range(1, max_multiplicity + 1):
            if mult * d > degree:
                break
            for rest in cyclotomic_products(degree - mult * d, max_multiplicity, n + 1):
                yield (n,) * mult + rest


def _solve_pisot_candidates(W, m, eta, s, theta_max, budget):
    """Integer P of degree s with W = eps z^s P(1/z) + eta z^m P, within bounds.

    With W (anti)reciprocal the coefficient equations pair up: index j and
    m + s - j give the same constraint, so solving j = m..m+s (plus the
    unknown-free ones with s < j < m) solves the whole system.  Yields
    (P, Q) for every assignment of the free coefficients in the box.
    """
    r = is_reciprocal(W)
    if r == Reciprocity.NEITHER:
        return
    if any(W[j] for j in range(s + 1, m)):
        return
    eps = int(r) * int(eta)
    e = int(eta)
    fixed = {}
    free = []
    for a in range(s + 1):
        b = s - m - a
        w = W[a + m]
        if b < 0 or b > s:
            fixed[a] = e * w
        elif b == a:
            if eps + e:
                if w % (eps + e):
                    return
                fixed[a] = w // (eps + e)
            elif w:
                return
            else:
                free.append((a, None))
        elif a < b:
            free.append((a, b))
    if fixed.get(s, eps) != eps or fixed.get(0, 1) < 1:
        return
    ranges = []
    for a, b in free:
        if a == 0:
            # |P(0)| is theta times the product of the inner roots
            vals = range(1, max(1, math.ceil(theta_max)))
        else:
            bound = int(math.comb(s, a) * theta_max)
            vals = sorted(range(-bound, bound + 1), key=lambda v: (abs(v), v))
        ranges.append(vals)
    base = [0] * (s + 1)
    for a, v in fixed.items():
        base[a] = v
    for values in itertools.product(*ranges):
        if budget[0] <= 0:
            budget[1] = True
            return
        budget[0] -= 1
        coeffs = list(base)
        for (a, b), v in zip(free, values):
            coeffs[a] = v
            if b is not None:
                coeffs[b] = eps * (W[a + m] - e * v)
        if coeffs[0] < 1 or coeffs[s] != eps:
            continue
        # Q = eps z^s P(1/z) has one root in (0, 1) and none in [-1, 0]
        q1 = eps * sum(coeffs)
        qm1 = eps * sum(c if (s - i) % 2 == 0 else -c for i, c in enumerate(coeffs))
        if q1 >= 0 or qm1 <= 0:
            continue
        P = IntPoly(coeffs)
        yield P, P.reverse() * eps


def _clearly_not_pisot(P):
    """Float screen: reject when the number of roots well outside |z| = 1 is not one.

    Only a rejection filter; survivors are certified exactly.
    """
    roots = np.roots(np.array(P.coeffs[::-1], dtype=float))
    return int(np.sum(np.abs(roots) > 1.0 + 1e-6)) != 1


def verify_association(R, U, P, m, eta):
    """True when U R == Q + eta z^m P with Q the reciprocal of P."""
    eta = SignChoice.of(eta)
    Q, _ = reciprocal_Q(P)
    W = U * R
    rhs = Q + P.shift(m) * int(eta)
    return W == rhs or W == -rhs


def boyd_search(R, m, eta, max_cyclotomic_degree=24, max_multiplicity=2,
                max_pisot_degree=None, theta_max=None, max_candidates=200_000):
    """Bounded search for (U, P, Q) with U R = Q + eta z^m P, P Pisot.

    The Pisot degree s runs from max(1, deg R - m) up to max_pisot_degree
    (default deg R); U runs over cyclotomic products of degree s + m - deg R.
    """
    if is_reciprocal(R) != Reciprocity.RECIPROCAL:
        raise ValueError(f"R must be reciprocal, got {R}")
    if m < 1:
        raise ValueError("m must be >= 1")
    eta = SignChoice.of(eta)
    tau = max_real_root_above_one(R)
    if theta_max is None:
        theta_max = (tau or 1.0) + 2.0
    n = R.degree()
    s_hi = n if max_pisot_degree is None else max_pisot_degree
    budget = [max_candidates, False]
    found = []
    seen = set()
    for s in range(max(1, n - m), s_hi + 1):
        d_u = s + m - n
        if d_u < 0 or d_u > max_cyclotomic_degree:
            continue
        for idx in cyclotomic_products(d_u, max_multiplicity):
            U = ONE
            for k in idx:
                U = U * cyclotomic(k)
            W = U * R
            if W.const != 1:
                W, U = -W, -U
            if W.degree() != m + s:
                continue
            for P, Q in _solve_pisot_candidates(W, m, eta, s, theta_max, budget):
                if P == Q or P in seen or _clearly_not_pisot(P):
                    continue
                if count_on_unit_circle(P) or count_inside_unit_disk(P)[0] != s - 1:
                    continue
                theta = max_real_root_above_one(P)
                if theta is None:
                    continue
                if classify_number(P).verdict != Verdict.PISOT:
                    continue
                seen.add(P)
                found.append(Association(U, P, Q, m, eta, theta))
            if budget[1]:
                break
        if budget[1]:
            log.info("boyd search truncated after %d candidates", max_candidates)
            break
    return BoydSearch(found, max_candidates - budget[0], budget[1])


def boyd_associate(R, m, eta, max_cyclotomic_degree=24, **kwargs):
    """All associations found within the bounds; NoAssociation if none."""
    res = boyd_search(R, m, eta, max_cyclotomic_degree, **kwargs)
    if not res.associations:
        raise NoAssociation(
            f"no Pisot association for R={R}, m={m}, eta={int(eta)} within the bounds"
            + (" (search truncated)" if res.truncated else ""))
    return res.associations
