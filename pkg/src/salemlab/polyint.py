"""Exact arithmetic on univariate integer polynomials.

Coefficients are stored in ascending order (``coeffs[0]`` is the constant
term), which matches the constant-term-first way the Pisot/Salem
literature writes P, Q, A, B.  Every value is an immutable :class:`IntPoly`;
every function here is pure and uses Python integers only.
"""

from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd

from salemlab.errors import BadLeadingCoeff, NotDivisible, ZeroLeading

__all__ = [
    "IntPoly", "SignChoice", "Reciprocity", "Z", "ONE", "ZERO",
    "add", "sub", "mul", "div_exact", "divides", "reverse",
    "reciprocal_Q", "reciprocal_B", "is_reciprocal",
    "cyclotomic", "totient", "cyclotomic_indices_up_to_degree",
    "poly_gcd", "prem", "squarefree_decomposition", "parse_poly",
    "format_poly",
]


def _strip(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(int(c) for c in coeffs[:n])


class IntPoly:
    """Univariate polynomial with arbitrary-precision integer coefficients.

    >>> p = IntPoly([1, 1, 0, -1])      # 1 + z - z^3
    >>> p.degree(), p.lead, p(2)
    (3, -1, -5)
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        if isinstance(coeffs, IntPoly):
            coeffs = coeffs.coeffs
        elif isinstance(coeffs, int):
            coeffs = (coeffs,)
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    continue
                raise TypeError(f"integer coefficients required, got {c!r}")
        object.__setattr__(self, "coeffs", _strip(list(coeffs)))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, coeffs):
        """Unchecked constructor for internal results that are already int lists."""
        n = len(coeffs)
        while n and coeffs[n - 1] == 0:
            n -= 1
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(coeffs[:n]))
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def from_text(cls, text):
        return parse_poly(text)

    # -- basic queries ----------------------------------------------------
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def const(self):
        return self.coeffs[0] if self.coeffs else 0

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def low_order(self):
        """Multiplicity of the root z = 0 (index of the first nonzero coefficient)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def content(self):
        g = 0
        for c in self.coeffs:
            g = igcd(g, c)
        return g

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPoly._raw([c // g for c in self.coeffs])

    def monic_sign(self):
        """Return ``self`` multiplied by the sign of its leading coefficient."""
        return -self if self.lead < 0 else self

    def derivative(self):
        return IntPoly._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def reverse(self):
        """z^deg p(1/z); drops degree when the constant term is zero."""
        return IntPoly._raw(self.coeffs[::-1])

    def reverse_to(self, n):
        """z^n p(1/z) for n >= deg p, keeping the z^(n-deg) factor."""
        if n < self.degree():
            raise ValueError("reverse_to needs n >= degree")
        return IntPoly._raw((list(self.coeffs) + [0] * (n + 1 - len(self.coeffs)))[::-1])

    def shift(self, k):
        """Multiply by z^k (k >= 0) or divide exactly by z^-k (k < 0)."""
        if k >= 0:
            return IntPoly._raw([0] * k + list(self.coeffs)) if self.coeffs else self
        k = -k
        if any(self.coeffs[:k]):
            raise NotDivisible(f"{self} is not divisible by z^{k}")
        return IntPoly._raw(self.coeffs[k:])

    def strip_z(self):
        """Return (k, q) with self = z^k q and q(0) != 0."""
        k = self.low_order()
        return k, IntPoly._raw(self.coeffs[k:])

    def compose_neg(self):
        """p(-z)."""
        return IntPoly._raw([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    # -- evaluation -------------------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x):
        """Exact value at a rational point, as a Fraction."""
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        n = self.degree()
        if n < 0:
            return Fraction(0)
        # homogeneous Horner: sum c_i num^i den^(n-i)
        acc = 0
        dpow = 1
        for c in reversed(self.coeffs):
            acc = acc * num + c * dpow
            dpow *= den
        return Fraction(acc, den ** n)

    def sign_at(self, x):
        """Sign (-1, 0, 1) of p at a rational x, computed in integers."""
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        acc = 0
        dpow = 1
        for c in reversed(self.coeffs):
            acc = acc * num + c * dpow
            dpow *= den
        return (acc > 0) - (acc < 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return IntPoly._raw([other * c for c in self.coeffs])
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __floordiv__(self, other):
        return div_exact(self, _coerce(other))

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int) and not isinstance(other, bool):
            return self.coeffs == _strip([other])
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(("IntPoly", self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"IntPoly([{', '.join(map(str, self.coeffs))}])"

    def __str__(self):
        return format_poly(self)

    def pretty(self, var="z"):
        """Human-readable form, e.g. ``1 + z - z^3``."""
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                term = mono if mag == 1 else f"{mag}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def _coerce(x):
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return IntPoly([x])
    return NotImplemented


ZERO = IntPoly()
ONE = IntPoly([1])
Z = IntPoly([0, 1])


class SignChoice(IntEnum):
    """A sign in {-1, +1} (epsilon, epsilon', eta in the constructions)."""

    MINUS = -1
    PLUS = 1

    @classmethod
    def of(cls, value):
        if value not in (-1, 1):
            raise ValueError(f"sign must be -1 or +1, got {value!r}")
        return cls(value)


class Reciprocity(IntEnum):
    ANTI_RECIPROCAL = -1
    NEITHER = 0
    RECIPROCAL = 1


# -- module-level operations -------------------------------------------------

def add(p, q):
    return p + q


def sub(p, q):
    return p - q


def mul(p, q):
    return p * q


def reverse(p):
    return p.reverse()


def div_exact(p, q):
    """Quotient r with q*r == p over the integers.

    Raises NotDivisible when the remainder is nonzero or a quotient
    coefficient would be non-integral.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return ZERO
    n, m = p.degree(), q.degree()
    if n < m:
        raise NotDivisible(f"{p} is not divisible by {q}")
    rem = list(p.coeffs)
    b = q.coeffs
    lb = b[-1]
    quot = [0] * (n - m + 1)
    for i in range(n - m, -1, -1):
        c = rem[i + m]
        if c:
            t, r = divmod(c, lb)
            if r:
                raise NotDivisible(f"{p} is not divisible by {q}")
            quot[i] = t
            for j in range(m + 1):
                rem[i + j] -= t * b[j]
    if any(rem[:m]):
        raise NotDivisible(f"{p} is not divisible by {q}")
    return IntPoly._raw(quot)


def divides(q, p):
    """True when q divides p exactly in Z[z]."""
    try:
        div_exact(p, q)
    except NotDivisible:
        return False
    return True


def reciprocal_Q(p):
    """Q = eps * z^s p(1/z) normalized so Q(0) = 1; returns (Q, eps)."""
    if p.is_zero() or abs(p.lead) != 1:
        raise BadLeadingCoeff(f"leading coefficient of {p} is not +-1")
    eps = SignChoice.of(p.lead)
    return p.reverse() * int(eps), eps


def reciprocal_B(a):
    """B = eps' * z^h a(1/z) normalized so B(0) >= 1; returns (B, eps')."""
    if a.is_zero():
        raise ZeroLeading("reciprocal_B of the zero polynomial")
    eps = SignChoice.PLUS if a.lead > 0 else SignChoice.MINUS
    return a.reverse() * int(eps), eps


def is_reciprocal(p):
    r = p.reverse()
    if r == p:
        return Reciprocity.RECIPROCAL
    if r == -p:
        return Reciprocity.ANTI_RECIPROCAL
    return Reciprocity.NEITHER


def totient(n):
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(n):
    """The n-th cyclotomic polynomial, by dividing z^n - 1 by lower ones."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    num = IntPoly._raw([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            num = div_exact(num, cyclotomic(d))
    return num


@lru_cache(maxsize=None)
def cyclotomic_indices_up_to_degree(max_degree):
    """All n with phi(n) <= max_degree, ascending."""
    if max_degree < 1:
        return ()
    # phi(n) >= sqrt(n/2) bounds the search
    limit = 2 * max_degree * max_degree + 2
    return tuple(n for n in range(1, limit + 1) if totient(n) <= max_degree)


def prem(a, b):
    """Pseudo-remainder of a by b, scaled by |lc(b)|^(deg a - deg b + 1).

    The positive scaling keeps signs intact, which Sturm chains rely on.
    """
    if b.is_zero():
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    r = list(a.coeffs)
    m = b.degree()
    bc = b.coeffs
    lb = bc[-1]
    sgn = 1 if lb > 0 else -1
    alb = abs(lb)
    while len(r) - 1 >= m and r:
        k = len(r) - 1 - m
        c = r[-1]
        # r <- |lb| r - sgn*c z^k b
        r = [alb * x for x in r]
        for j in range(m + 1):
            r[k + j] -= sgn * c * bc[j]
        while r and r[-1] == 0:
            r.pop()
    return IntPoly._raw(r)


def poly_gcd(p, q):
    """gcd over Q, returned primitive with positive leading coefficient."""
    a, b = p.primitive(), q.primitive()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degree() < b.degree():
        a, b = b, a
    while not b.is_zero():
        r = prem(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def squarefree_decomposition(p):
    """Yun's algorithm: return [(f_i, i), ...] with p ~ prod f_i^i.

    Factors are primitive with positive leading coefficient; constant
    factors are omitted, so the product equals p up to its content and sign.
    """
    f = p.primitive()
    if f.degree() <= 0:
        return []
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = div_exact(f, a)
    c = div_exact(df, a)
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = poly_gcd(b, d)
        if a.degree() > 0:
            out.append((a, i))
        b = div_exact(b, a)
        c = div_exact(d, a) if not d.is_zero() else ZERO
        d = c - b.derivative()
        i += 1
    return out


def parse_poly(text):
    """Parse the canonical comma-separated ascending form, e.g. ``1,1,0,-1``."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    try:
        coeffs = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"bad polynomial text {text!r}: expected comma-separated integers") from None
    return IntPoly(coeffs)


def format_poly(p):
    return ",".join(map(str, p.coeffs)) if p.coeffs else "0"
