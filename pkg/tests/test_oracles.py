import pytest

from conftest import LEHMER, SMALLEST_PISOT
from salemlab.oracles import (
    bisection_max_root,
    brute_force_inside_count,
    brute_force_irreducible,
    kronecker_factor,
)
from salemlab.polyint import IntPoly, divides


def test_bisection_values():
    assert bisection_max_root(SMALLEST_PISOT) == pytest.approx(1.324717957, abs=1e-9)
    assert bisection_max_root(LEHMER) == pytest.approx(1.176280818, abs=1e-9)
    assert bisection_max_root(IntPoly([1, 1, 1])) is None


def test_kronecker_finds_factors():
    p = IntPoly([1, 1, -1]) * IntPoly([2, 0, 3, 1])
    f = kronecker_factor(p)
    assert f is not None and 1 <= f.degree() <= 2 and divides(f, p)
    assert kronecker_factor(IntPoly([1, 0, 1]) * IntPoly([1, 0, 1])) is not None


def test_brute_force_irreducible():
    assert brute_force_irreducible(SMALLEST_PISOT)
    assert brute_force_irreducible(LEHMER)
    assert not brute_force_irreducible(IntPoly([1, 0, -1]))
    assert not brute_force_irreducible(IntPoly([4]))


def test_float_inside_count_refuses_circle_roots():
    assert brute_force_inside_count(SMALLEST_PISOT) == 2
    with pytest.raises(ValueError):
        brute_force_inside_count(IntPoly([1, 0, 1]))
