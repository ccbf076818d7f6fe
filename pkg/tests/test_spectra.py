from fractions import Fraction
from itertools import combinations

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercharpoly.pathpoly import angle_value
from hypercharpoly.reduction import hyperpath_charpoly
from hypercharpoly.spectra import (
    EigenvalueDescriptor,
    dedup_key,
    distinct_root_count,
    exact_c_squared,
    hyperpath_eigenvalues,
    spectral_radius,
)

PREC = 200


def residual(f, d) -> mpmath.mpf:
    # absolute |phi(v)|, stricter than scaling by (1 + |v|)^deg
    with mpmath.workprec(PREC):
        return abs(f.evaluate(d.value(PREC)))


def test_descriptor_folding():
    d = EigenvalueDescriptor(Fraction(3, 4), 5, 3)
    assert d.q == Fraction(1, 4) and d.theta == 2
    with pytest.raises(ValueError):
        EigenvalueDescriptor(Fraction(1, 2), 0, 3)
    with pytest.raises(ValueError):
        EigenvalueDescriptor(Fraction(5, 4), 0, 3)
    z = EigenvalueDescriptor.zero(3)
    assert z.is_zero and z.value() == 0


def test_dedup_key_examples():
    assert dedup_key(1, 1) == Fraction(1, 3)
    assert dedup_key(4, 2) == Fraction(1, 3)
    assert dedup_key(2, 2) == Fraction(1, 2)
    assert dedup_key(2, 3) == dedup_key(2, 1) == Fraction(1, 4)
    with pytest.raises(ValueError):
        dedup_key(2, 4)


def test_eigenvalues_single_edge_k3():
    ds = hyperpath_eigenvalues(1, 3)
    assert len(ds) == 4
    assert EigenvalueDescriptor.zero(3) in ds
    assert {d.theta for d in ds if not d.is_zero} == {0, 1, 2}
    assert {d.q for d in ds if not d.is_zero} == {Fraction(1, 3)}


def test_eigenvalues_p2_k3():
    ds = hyperpath_eigenvalues(2, 3)
    assert len(ds) == 7
    moduli = sorted(mpmath.nstr(d.modulus(), 12) for d in ds)
    assert moduli == ["0.0"] + ["1.0"] * 3 + ["1.25992104989"] * 3


def test_eigenvalues_p2_k2_is_the_path():
    ds = hyperpath_eigenvalues(2, 2)
    vals = sorted(float(d.value().real) for d in ds)
    assert len(ds) == 3
    assert vals == pytest.approx([-2**0.5, 0.0, 2**0.5], abs=1e-15)


ROOT_CASES = [(m, k) for m in range(1, 5) for k in range(2, 5)]


@pytest.mark.parametrize("m,k", ROOT_CASES)
def test_root_completeness(m, k):
    f = hyperpath_charpoly(m, k)
    ds = hyperpath_eigenvalues(m, k)
    for d in ds:
        assert residual(f, d) < 1e-10
    assert distinct_root_count(f) == len(ds)


def test_residual_detects_non_roots():
    f = hyperpath_charpoly(2, 3)
    assert residual(f, EigenvalueDescriptor(Fraction(1, 5), 0, 3)) > 1e-3


@pytest.mark.parametrize("m,k", ROOT_CASES)
def test_dedup_soundness(m, k):
    ds = sorted(hyperpath_eigenvalues(m, k))
    with mpmath.workprec(PREC):
        vals = [d.value(PREC) for d in ds]
        for a, b in combinations(vals, 2):
            assert abs(a - b) > 1e-12


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 40), st.integers(0, 40), st.data())
def test_equal_keys_equal_values(j1, j2, data):
    t1 = data.draw(st.integers(1, j1 + 1))
    t2 = data.draw(st.integers(1, j2 + 1))
    a = abs(angle_value(Fraction(t1, j1 + 2)))
    b = abs(angle_value(Fraction(t2, j2 + 2)))
    if dedup_key(j1, t1) == dedup_key(j2, t2):
        assert abs(a - b) < 1e-30
    else:
        assert abs(a - b) > 1e-12


def test_exact_c_squared_table():
    assert exact_c_squared(Fraction(1, 3)) == 1
    assert exact_c_squared(Fraction(1, 4)) == 2
    assert exact_c_squared(Fraction(1, 6)) == 3
    assert exact_c_squared(Fraction(1, 2)) == 0
    assert exact_c_squared(Fraction(1, 5)) is None


def test_radius_examples():
    r = spectral_radius(1, 3)
    assert r.exact == 1 and r.exact_str() == "1"
    r2 = spectral_radius(2, 3)
    assert r2.exact is None and r2.exact_str() == "2^(1/3)"
    with mpmath.workdps(60):
        assert abs(r2.value - mpmath.cbrt(2)) < mpmath.mpf(10) ** -45
    r50 = spectral_radius(50, 3)
    assert abs(r50.value - mpmath.cbrt(4)) < 0.002
    assert spectral_radius(2, 2).exact_str() == "2^(1/2)"
    assert spectral_radius(4, 2).exact_str() == "3^(1/2)"
    assert spectral_radius(2, 4).exact_str() == "2^(1/4)"
    assert spectral_radius(1, 2).exact == 1


@pytest.mark.parametrize("m,k", [(m, k) for m in range(1, 7) for k in (2, 3, 4)])
def test_radius_is_largest_modulus(m, k):
    r = spectral_radius(m, k)
    top = max(d.modulus() for d in hyperpath_eigenvalues(m, k))
    assert abs(top - r.value) < 1e-40


@pytest.mark.parametrize("k", range(2, 7))
def test_radius_monotone_below_limit(k):
    with mpmath.workdps(40):
        vals = [spectral_radius(m, k, digits=40).value for m in range(1, 201)]
        limit = mpmath.root(4, k)
        assert all(a < b for a, b in zip(vals, vals[1:]))
        assert all(v < limit for v in vals)
        assert limit - vals[-1] < limit - vals[0]
