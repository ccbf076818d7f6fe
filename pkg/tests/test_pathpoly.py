import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercharpoly.exactpoly import IntPoly, eval_exact
from hypercharpoly.pathpoly import (
    angle_value,
    binomial,
    parity_split,
    path_charpoly_closed,
    path_charpoly_recurrence,
    path_eigenvalues,
)

P = IntPoly


def test_closed_form_examples():
    assert path_charpoly_closed(2) == P([0, -2, 0, 1])
    assert path_charpoly_closed(0) == P([0, 1])
    assert path_charpoly_closed(-1) == P([1])
    with pytest.raises(ValueError):
        path_charpoly_closed(-2)


def test_recurrence_examples():
    assert path_charpoly_recurrence(1) == P([-1, 0, 1])
    assert path_charpoly_recurrence(3) == P([1, 0, -3, 0, 1])
    assert path_charpoly_recurrence(2) == P([0, -2, 0, 1])


def test_parity_split_examples():
    assert parity_split(P([0, -2, 0, 1])) == (1, P([-2, 1]))
    assert parity_split(P([-1, 0, 1])) == (0, P([-1, 1]))
    assert parity_split(P([0, 1])) == (1, P([1]))


def test_parity_split_rejects_mixed_parity():
    with pytest.raises(ValueError):
        parity_split(P([1, 1, 1]))
    with pytest.raises(ValueError):
        parity_split(P([-1, 0, 1]), j=2)


def test_path_eigenvalues_examples():
    angles = path_eigenvalues(2)
    assert angles == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    vals = [angle_value(a) for a in angles]
    with mpmath.workprec(200):
        assert abs(vals[0] - mpmath.sqrt(2)) < mpmath.mpf(2) ** -190
        assert abs(vals[1]) < mpmath.mpf(2) ** -190
        assert abs(vals[2] + mpmath.sqrt(2)) < mpmath.mpf(2) ** -190
    assert path_eigenvalues(0) == [Fraction(1, 2)]


def test_binomial_big():
    assert binomial(200, 100) == 90548514656103281165404177077484163874504589675413336841320
    assert binomial(5, 7) == 0


@pytest.mark.parametrize("j", range(1, 41))
def test_closed_equals_recurrence(j):
    assert path_charpoly_closed(j) == path_charpoly_recurrence(j)


@pytest.mark.parametrize("j", range(0, 41))
def test_parity_split_roundtrip(j):
    p = path_charpoly_closed(j)
    eps, h = parity_split(p, j)
    assert eps == (j + 1) % 2
    assert h.substitute_power(2).shift(eps) == p


@pytest.mark.parametrize("m", range(0, 41))
def test_eigenvalue_product_matches_polynomial(m):
    rng = random.Random(m)
    p = path_charpoly_closed(m)
    with mpmath.workprec(256):
        roots = [angle_value(a, 256) for a in path_eigenvalues(m)]
        for _ in range(10):
            x = Fraction(rng.randint(-300, 300), rng.randint(1, 100))
            xm = mpmath.mpf(x.numerator) / x.denominator
            prod = mpmath.fprod(xm - r for r in roots)
            exact = eval_exact(p, x)
            want = mpmath.mpf(exact.numerator) / exact.denominator
            scale = max(abs(want), mpmath.mpf(1))
            assert abs(prod - want) / scale < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 60))
def test_degree_and_leading(j):
    p = path_charpoly_closed(j)
    assert p.degree == j + 1 and p.leading == 1
