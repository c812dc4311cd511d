"""Slow independent reference paths used to cross-check the fast code.

Nothing here shares logic with rootloc or classify: roots come from a sign
scan plus float bisection, and factors from Kronecker's interpolation
search over divisors of values at small integers.
"""

import math

import numpy as np

from salemlab.polyint import IntPoly, divides

_POINTS = (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5)


def _horner(coeffs, x):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def bisection_max_root(p, tol=1e-14, grid_per_degree=4096):
    """Largest real root above 1 from a downward sign scan and bisection (floats).

    Assumes the largest root is simple and separated from the next one by
    more than the grid step; returns None when no sign change is seen.
    """
    n = p.degree()
    if n < 1:
        return None
    coeffs = [float(c) for c in p.coeffs]
    bound = 1.0 + max(abs(c / coeffs[-1]) for c in coeffs[:-1])
    steps = grid_per_degree * n
    h = (bound - 1.0) / steps
    hi = bound
    f_hi = _horner(coeffs, hi)
    for i in range(1, steps + 1):
        lo = bound - i * h
        f_lo = _horner(coeffs, lo)
        if f_lo == 0.0:
            return lo if lo > 1.0 else None
        if (f_lo < 0) != (f_hi < 0):
            break
        hi, f_hi = lo, f_lo
    else:
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol * max(1.0, abs(mid)) or mid in (lo, hi):
            break
        f_mid = _horner(coeffs, mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _signed_divisors(v):
    v = abs(v)
    out = []
    d = 1
    while d * d <= v:
        if v % d == 0:
            out.append(d)
            if d * d != v:
                out.append(v // d)
        d += 1
    out.sort()
    return out + [-d for d in out]


def _newton_to_monomial(xs, cs):
    """Coefficients of sum c_j prod_{i<j} (z - x_i)."""
    poly = [0]
    basis = [1]
    for x, c in zip(xs, cs):
        if len(poly) < len(basis):
            poly += [0] * (len(basis) - len(poly))
        for i, b in enumerate(basis):
            poly[i] += c * b
        nxt = [0] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b
            nxt[i] -= x * b
        basis = nxt
    return IntPoly(poly)


def kronecker_factor(p):
    """A nontrivial factor of p over Z (as a polynomial of degree >= 1), or None.

    Tries each factor degree k <= deg p / 2 by interpolating through k + 1
    small integers whose values p(x) have the fewest divisors; Newton divided
    differences of an integer polynomial at integer nodes are integers,
    which prunes most divisor tuples early.
    """
    p = p.primitive()
    n = p.degree()
    if n < 2:
        return None
    if p.const == 0:
        return IntPoly([0, 1])
    values = {}
    for x in _POINTS:
        v = p(x)
        if v == 0:
            return IntPoly([-x, 1])
        values[x] = v
    order = sorted(_POINTS, key=lambda x: (len(_signed_divisors(values[x])), abs(x)))
    lead = p.lead
    for k in range(1, n // 2 + 1):
        xs = order[: k + 1]
        extra = order[k + 1:]
        cands = [_signed_divisors(values[x]) for x in xs]
        cands[0] = [d for d in cands[0] if d > 0]  # f and -f are the same factor
        table = []

        def search(j):
            if j == k + 1:
                ck = table[k][k]
                if ck == 0 or lead % ck:
                    return None
                f = _newton_to_monomial(xs, [table[i][i] for i in range(k + 1)])
                for x in extra:
                    fx = f(x)
                    if fx == 0 or values[x] % fx:
                        return None
                return f if divides(f, p) else None
            for v in cands[j]:
                row = [v]
                ok = True
                for i in range(1, j + 1):
                    num = row[i - 1] - table[j - 1][i - 1]
                    den = xs[j] - xs[j - i]
                    if num % den:
                        ok = False
                        break
                    row.append(num // den)
                if not ok:
                    continue
                table.append(row)
                found = search(j + 1)
                table.pop()
                if found is not None:
                    return found
            return None

        f = search(0)
        if f is not None:
            return f
    return None


def brute_force_irreducible(p):
    """Irreducibility over Q by exhaustive Kronecker search (content ignored)."""
    if p.is_zero():
        raise ValueError("irreducibility of the zero polynomial")
    n = p.degree()
    if n <= 0:
        return False
    if n == 1:
        return True
    return kronecker_factor(p) is None


def brute_force_inside_count(p):
    """Roots strictly inside |z| < 1 from a float eigenvalue solve (numpy).

    A cross-check only: roots within 1e-9 of the circle make it refuse.
    """
    roots = np.roots(np.array(p.coeffs[::-1], dtype=float))
    mods = np.abs(roots)
    if np.any(np.abs(mods - 1.0) < 1e-9):
        raise ValueError("a root is too close to the unit circle for the float oracle")
    return int(np.sum(mods < 1.0))


def isclose(a, b, tol=1e-9):
    return a is not None and b is not None and math.isclose(a, b, rel_tol=0.0, abs_tol=tol)
