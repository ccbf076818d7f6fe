"""Distinct eigenvalues and spectral radii of hyperpaths.

Each nonzero eigenvalue is a k-th root of c^2 with c = 2cos(pi*q) for a
rational angle q.  Because |cos| is injective on (0, 1/2], the angle folded
into (0, 1/2] plus the root index identify the value exactly, so eigenvalues
are compared and deduplicated without floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exactpoly import FactoredCharPoly, squarefree_coprime_base
from .reduction import a_exponents, hyperpath_charpoly

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class EigenvalueDescriptor:
    """|2cos(pi q)|^(2/k) * exp(2 pi i theta / k), or zero."""

    q: Fraction
    theta: int
    k: int
    is_zero: bool = False

    def __post_init__(self):
        if self.is_zero:
            object.__setattr__(self, "q", HALF)
            object.__setattr__(self, "theta", 0)
            return
        q = Fraction(self.q)
        if not 0 < q < 1:
            raise ValueError(f"angle {q} outside (0, 1)")
        q = min(q, 1 - q)
        if q == HALF:
            raise ValueError("angle 1/2 describes zero; use is_zero")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "theta", self.theta % self.k)

    @classmethod
    def zero(cls, k: int) -> EigenvalueDescriptor:
        return cls(HALF, 0, k, True)

    def c_squared(self, prec: int = 200) -> mpmath.mpf:
        with mpmath.workprec(prec):
            return 4 * mpmath.cospi(mpmath.mpf(self.q.numerator) / self.q.denominator) ** 2

    def value(self, prec: int = 200) -> mpmath.mpc:
        with mpmath.workprec(prec + 20):
            if self.is_zero:
                return mpmath.mpc(0)
            r = self.c_squared(prec + 20) ** (mpmath.mpf(1) / self.k)
            return r * mpmath.expjpi(mpmath.mpf(2 * self.theta) / self.k)

    def modulus(self, prec: int = 200) -> mpmath.mpf:
        if self.is_zero:
            return mpmath.mpf(0)
        with mpmath.workprec(prec + 20):
            return self.c_squared(prec + 20) ** (mpmath.mpf(1) / self.k)

    def to_dict(self, digits: int = 30) -> dict:
        prec = max(int(digits * 3.33) + 16, 53)
        v = self.value(prec)
        return {
            "q": f"{self.q.numerator}/{self.q.denominator}",
            "theta": self.theta,
            "zero": self.is_zero,
            "re": mpmath.nstr(v.real, digits),
            "im": mpmath.nstr(v.imag, digits),
            "modulus": mpmath.nstr(self.modulus(prec), digits),
        }


def dedup_key(j: int, t: int) -> Fraction:
    """Angle t/(j+2) folded into (0, 1/2]; equal keys give equal |2cos|."""
    if not 1 <= t <= j + 1:
        raise ValueError(f"t must lie in 1..{j + 1}")
    q = Fraction(t, j + 2)
    return min(q, 1 - q)


def exact_c_squared(q: Fraction) -> Fraction | None:
    """4cos^2(pi q) when it is rational, else None.

    4cos^2(pi q) = 2 + 2cos(2 pi q), and 2cos of a rational multiple of pi is
    rational only when it is an integer (Niven), i.e. when 2q has
    denominator 1, 2 or 3.
    """
    x = (2 * q) % 2
    table = {
        Fraction(0): 2, Fraction(1): -2,
        Fraction(1, 2): 0, Fraction(3, 2): 0,
        Fraction(1, 3): 1, Fraction(5, 3): 1,
        Fraction(2, 3): -1, Fraction(4, 3): -1,
    }
    if x not in table:
        return None
    return Fraction(2 + table[x])


def _exact_root(x: Fraction, k: int) -> Fraction | None:
    def iroot(v: int) -> int | None:
        r = round(v ** (1.0 / k))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c**k == v:
                return c
        return None

    a, b = iroot(x.numerator), iroot(x.denominator)
    return Fraction(a, b) if a is not None and b is not None else None


def hyperpath_eigenvalues(m: int, k: int) -> set[EigenvalueDescriptor]:
    """All distinct eigenvalues of P_m^(k).

    Only path lengths j whose factor actually occurs (a(j, m) > 0) are used;
    for k = 2 that leaves j = m alone.  Zero is included exactly when the
    characteristic polynomial has a positive power of lambda.
    """
    f = hyperpath_charpoly(m, k)
    table = a_exponents(m, k)
    out: set[EigenvalueDescriptor] = set()
    if f.lambda_exponent > 0:
        out.add(EigenvalueDescriptor.zero(k))
    for j in range(1, m + 1):
        if table[j] == 0:
            continue
        for t in range(1, j + 2):
            q = dedup_key(j, t)
            if q == HALF:
                continue
            for theta in range(k):
                out.add(EigenvalueDescriptor(q, theta, k))
    return out


def distinct_root_count(f: FactoredCharPoly) -> int:
    """Number of distinct complex roots, read off the factor structure."""
    base = squarefree_coprime_base(b for b, _ in f.factors)
    nonzero_mu_roots = sum(b.degree for b in base)
    return (1 if f.lambda_exponent > 0 else 0) + f.step * nonzero_mu_roots


@dataclass(frozen=True)
class SpectralRadius:
    descriptor: EigenvalueDescriptor
    value: mpmath.mpf
    c_squared: Fraction | None  # exact 4cos^2(pi q) when rational
    exact: Fraction | None  # exact rational radius when it exists

    def exact_str(self) -> str:
        q, k = self.descriptor.q, self.descriptor.k
        if self.exact is not None:
            return str(self.exact)
        if self.c_squared is not None:
            return f"{self.c_squared}^(1/{k})"
        return f"(2cos(pi*{q}))^(2/{k})"

    def to_dict(self, digits: int = 30) -> dict:
        return {
            "q": f"{self.descriptor.q.numerator}/{self.descriptor.q.denominator}",
            "theta": 0,
            "exact": self.exact_str(),
            "value": mpmath.nstr(self.value, digits),
        }


def spectral_radius(m: int, k: int, digits: int = 50) -> SpectralRadius:
    """(2cos(pi/(m+2)))^(2/k), the modulus of the theta = 0 branch at q = 1/(m+2)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    desc = EigenvalueDescriptor(Fraction(1, m + 2), 0, k)
    prec = int(digits * 3.33) + 16
    c2 = exact_c_squared(desc.q)
    exact = _exact_root(c2, k) if c2 is not None else None
    return SpectralRadius(desc, desc.modulus(prec), c2, exact)
