"""Characteristic polynomials and eigenvalues of ordinary paths.

``P_j`` is the path with j edges (j + 1 vertices); ``P_{-1}`` is the empty
graph whose polynomial is 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from .exactpoly import IntPoly


@lru_cache(maxsize=None)
def _binomial_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _binomial_row(n - 1)
    return (1,) + tuple(prev[i] + prev[i + 1] for i in range(n - 1)) + (1,)


def binomial(n: int, r: int) -> int:
    if r < 0 or r > n:
        return 0
    return _binomial_row(n)[r]


def path_charpoly_closed(j: int) -> IntPoly:
    """sum_q (-1)^q C(j+1-q, q) x^(j+1-2q)."""
    if j < -1:
        raise ValueError(f"path length must be >= -1, got {j}")
    terms = {}
    for q in range((j + 1) // 2 + 1):
        terms[j + 1 - 2 * q] = (-1) ** q * binomial(j + 1 - q, q)
    return IntPoly.from_terms(terms)


def path_charpoly_recurrence(j: int) -> IntPoly:
    """Three-term recurrence p_j = x p_{j-1} - p_{j-2} from p_{-1}=1, p_0=x."""
    if j < -1:
        raise ValueError(f"path length must be >= -1, got {j}")
    prev, cur = IntPoly([1]), IntPoly([0, 1])
    if j == -1:
        return prev
    for _ in range(j):
        prev, cur = cur, cur.shift(1) - prev
    return cur


def parity_split(p: IntPoly, j: int | None = None) -> tuple[int, IntPoly]:
    """Write ``p(x) = x**eps * h(x**2)``.

    Every exponent of a path polynomial has the parity of j + 1; a term of
    the other parity means the input is corrupted.
    """
    terms = p.terms()
    if not terms:
        raise ValueError("zero polynomial has no parity")
    eps = terms[-1][0] % 2
    if j is not None and eps != (j + 1) % 2:
        raise ValueError(f"degree parity does not match path length {j}")
    h = {}
    for e, c in terms:
        if e % 2 != eps:
            raise ValueError(f"term x^{e} breaks the parity of the path polynomial")
        h[(e - eps) // 2] = c
    return eps, IntPoly.from_terms(h)


def path_eigenvalues(m: int) -> list[Fraction]:
    """Angles t/(m+2), t = 1..m+1, so that the eigenvalues are 2cos(pi*angle)."""
    if m < 0:
        raise ValueError(f"path length must be >= 0, got {m}")
    return [Fraction(t, m + 2) for t in range(1, m + 2)]


def angle_value(angle: Fraction, prec: int = 200) -> mpmath.mpf:
    """Numeric 2cos(pi * angle)."""
    with mpmath.workprec(prec):
        return 2 * mpmath.cospi(mpmath.mpf(angle.numerator) / angle.denominator)
