"""Characteristic polynomials from first principles.

Graphs (k = 2) go through a fraction-free determinant of lambda*I - A over
Z[lambda].  Hypergraphs go through Macaulay's formula Res = det M / det M'
evaluated at many lambda values modulo word-size primes, interpolated in
lambda and lifted to the integers by CRT.  Nothing here uses the reduction
formulas.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import prod

import numpy as np
from sympy import prevprime

from .config import DEFAULT_LIMITS, Limits
from .exactpoly import (
    ONE,
    BudgetExceeded,
    FactoredCharPoly,
    IntPoly,
    crt_polys,
    exact_div,
    interpolate,
)
from .hypergraph import Hypergraph, PolySystem, adjacency_matrix, eigen_system

log = logging.getLogger(__name__)

# p < 2**31 keeps p*p inside int64 for vectorised elimination
PRIME_CEILING = 2**31


class OracleBudgetExceeded(BudgetExceeded):
    def __init__(self, needed: int, budget: int):
        RuntimeError.__init__(
            self, f"Macaulay matrix would be {needed}x{needed}; budget allows {budget}"
        )
        self.needed = needed
        self.budget = budget


class OracleInconclusive(RuntimeError):
    """The Macaulay denominator kept vanishing; no answer is better than a wrong one."""


def word_primes(start: int = PRIME_CEILING):
    p = start
    while True:
        p = prevprime(p)
        yield p


@dataclass
class CharPolyResult:
    poly: IntPoly
    method: str
    primes_used: list[int] = field(default_factory=list)
    sample_count: int = 0


# -- k = 2 -------------------------------------------------------------------


def bareiss_det(mat: list[list[IntPoly]]) -> IntPoly:
    """Fraction-free determinant; every leading principal minor must be nonzero."""
    n = len(mat)
    if n == 0:
        return ONE
    m = [row[:] for row in mat]
    prev = ONE
    for p in range(n - 1):
        piv = m[p][p]
        if piv.is_zero:
            raise ZeroDivisionError("zero leading principal minor")
        for i in range(p + 1, n):
            for j in range(p + 1, n):
                m[i][j] = exact_div(m[i][j] * piv - m[i][p] * m[p][j], prev)
        prev = piv
    return m[n - 1][n - 1]


def matrix_charpoly(h: Hypergraph) -> CharPolyResult:
    """det(lambda I - A) for a graph.

    Leading principal minors of lambda I - A are characteristic polynomials
    of principal submatrices, hence monic, so Bareiss never meets a zero pivot.
    """
    if h.k != 2:
        raise ValueError("matrix_charpoly needs k = 2")
    a = adjacency_matrix(h)
    lam = IntPoly([0, 1])
    mat = [
        [(lam if i == j else IntPoly()) - IntPoly([a[i][j]]) for j in range(h.n)]
        for i in range(h.n)
    ]
    p = bareiss_det(mat)
    _check_charpoly(p, h)
    return CharPolyResult(p, "matrix")


# -- Macaulay matrices --------------------------------------------------------


@dataclass(frozen=True)
class MacaulayMatrix:
    """Rows are monomial multiples of the F_i; entries are c0 + c1*lambda.

    ``const`` and ``lin`` hold c0 and c1 densely.  ``minor`` lists the
    row/column indices of non-reduced monomials (those divisible by two
    distinct x_i^d_i); their submatrix is the extraneous factor.
    """

    n: int
    degrees: tuple[int, ...]
    D: int
    monomials: tuple[tuple[int, ...], ...]
    const: np.ndarray
    lin: np.ndarray
    minor: tuple[int, ...]
    row_owner: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def res_degree_bound(self) -> int:
        """Degree of Res in lambda when every coefficient is linear in lambda."""
        return sum(prod(d for j, d in enumerate(self.degrees) if j != i) for i in range(self.n))


def monomials_of_degree(n: int, D: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree D, in graded lexicographic order."""
    out = []
    for combo in combinations_with_replacement(range(n), D):
        e = [0] * n
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def macaulay_dimension(n: int, k: int) -> int:
    from math import comb

    D = n * (k - 2) + 1
    return comb(D + n - 1, n - 1)


def macaulay_matrix(system: PolySystem, budget: int | None = None) -> MacaulayMatrix:
    n = system.n
    degrees = tuple(system.degrees())
    D = sum(d - 1 for d in degrees) + 1
    from math import comb

    dim = comb(D + n - 1, n - 1)
    if budget is not None and dim > budget:
        raise OracleBudgetExceeded(dim, budget)
    mons = monomials_of_degree(n, D)
    index = {m: i for i, m in enumerate(mons)}
    const = np.zeros((dim, dim), dtype=object)
    lin = np.zeros((dim, dim), dtype=object)
    minor = []
    owner = []
    for r, mon in enumerate(mons):
        divisible = [i for i in range(n) if mon[i] >= degrees[i]]
        if len(divisible) > 1:
            minor.append(r)
        i = divisible[0]
        owner.append(i)
        cof = tuple(mon[j] - (degrees[i] if j == i else 0) for j in range(n))
        for mo in system.polys[i]:
            col = index[tuple(c + e for c, e in zip(cof, mo.exps))]
            if mo.lam:
                lin[r, col] += mo.coeff
            else:
                const[r, col] += mo.coeff
    return MacaulayMatrix(n, degrees, D, tuple(mons), const, lin, tuple(minor), tuple(owner))


def det_mod(a: np.ndarray, p: int) -> int:
    """Determinant modulo a prime p < 2**31 by Gaussian elimination."""
    a = np.array(a, dtype=np.int64) % p
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            a[[c, r]] = a[[r, c]]
            det = -det
        piv = int(a[c, c])
        det = det * piv % p
        below = c + 1 + np.flatnonzero(a[c + 1:, c])
        if below.size:
            f = a[below, c] * pow(piv, -1, p) % p
            a[below, c:] = (a[below, c:] - (f[:, None] * a[c, c:]) % p) % p
    return det % p


class _ModularMatrix:
    """Reduces a MacaulayMatrix modulo p once; evaluates at lambda values."""

    def __init__(self, mac: MacaulayMatrix, p: int):
        self.p = p
        self.c0 = np.array(mac.const.astype(object) % p, dtype=np.int64)
        self.c1 = np.array(mac.lin.astype(object) % p, dtype=np.int64)
        self.minor = np.array(mac.minor, dtype=np.int64)

    def at(self, lam: int) -> np.ndarray:
        return (self.c0 + (lam % self.p) * self.c1) % self.p

    def resultant(self, lam: int) -> int | None:
        """det M / det M' at lambda, or None when det M' vanishes there."""
        m = self.at(lam)
        p = self.p
        if self.minor.size:
            dm = det_mod(m[np.ix_(self.minor, self.minor)], p)
            if dm == 0:
                return None
        else:
            dm = 1
        return det_mod(m, p) * pow(dm, -1, p) % p


def resultant_values_mod(system: PolySystem, lams, p: int) -> list[int | None]:
    """Macaulay resultant of a system at the given lambda values, mod p."""
    mm = _ModularMatrix(macaulay_matrix(system), p)
    return [mm.resultant(x) for x in lams]


def _check_charpoly(p: IntPoly, h: Hypergraph) -> None:
    want = h.n * (h.k - 1) ** (h.n - 1) if h.n else 0
    if p.degree != want or p.leading != 1:
        raise OracleInconclusive(
            f"oracle produced degree {p.degree}, leading {p.leading}; expected monic degree {want}"
        )


def coefficient_bound(h: Hypergraph) -> int:
    """|coeff| <= (1 + max degree)^N: every root is an eigenvalue of modulus <= max degree."""
    delta = max((h.degree(v) for v in range(h.n)), default=0)
    N = h.n * (h.k - 1) ** (h.n - 1) if h.n else 0
    return (1 + delta) ** N


def macaulay_charpoly(
    h: Hypergraph,
    limits: Limits = DEFAULT_LIMITS,
    max_prime_switches: int = 8,
    confirm: int = 2,
) -> CharPolyResult:
    """Resultant of the eigen-system by evaluation, interpolation and CRT.

    Per prime: sample lambda = 1, 2, ... skipping points where det M' = 0;
    a prime that needs too many skips is abandoned.  Primes are added until
    the product exceeds twice the coefficient bound, then ``confirm`` more
    primes must reproduce the lift unchanged.
    """
    if h.n == 0:
        return CharPolyResult(ONE, "macaulay")
    mac = macaulay_matrix(eigen_system(h), limits.oracle_dim)
    deg = h.n * (h.k - 1) ** (h.n - 1)
    bound = coefficient_bound(h)
    max_skips = len(mac.minor) + 8

    residues: list[IntPoly] = []
    primes: list[int] = []
    lifted, modulus = None, 1
    confirmed = 0
    switches = 0
    samples = 0
    for p in word_primes():
        mm = _ModularMatrix(mac, p)
        pts = []
        skips = 0
        lam = 1
        while len(pts) < deg + 1 and skips <= max_skips:
            v = mm.resultant(lam)
            if v is None:
                skips += 1
            else:
                pts.append((lam, v))
            lam += 1
        if len(pts) < deg + 1:
            switches += 1
            log.info("prime %d: det M' vanished at %d samples, switching", p, skips)
            if switches > max_prime_switches:
                raise OracleInconclusive("Macaulay denominator vanishes for every prime tried")
            continue
        samples += len(pts)
        r = interpolate(pts, deg, p)
        if r.degree != deg or r.leading != 1:
            raise OracleInconclusive(f"residue polynomial mod {p} is not monic of degree {deg}")
        if lifted is not None and modulus > 2 * bound:
            if all(c % p == rc for c, rc in zip(lifted.coeffs(), r.coeffs())):
                confirmed += 1
                primes.append(p)
                residues.append(r)
                if confirmed >= confirm:
                    break
                continue
            log.warning("prime %d disagrees with the CRT lift; extending", p)
            confirmed = 0
        residues.append(r)
        primes.append(p)
        lifted, modulus = crt_polys(residues, primes)
    _check_charpoly(lifted, h)
    return CharPolyResult(lifted, "macaulay", primes, samples)


# -- comparison ---------------------------------------------------------------


@dataclass
class Verdict:
    match: bool
    method: str
    degree: int
    primes: list[int]
    first_mismatch: dict | None = None

    def to_dict(self) -> dict:
        return {
            "match": self.match,
            "method": self.method,
            "degree": self.degree,
            "primes": self.primes,
            "first_mismatch": self.first_mismatch,
        }


def oracle_charpoly(h: Hypergraph, limits: Limits = DEFAULT_LIMITS) -> CharPolyResult:
    return matrix_charpoly(h) if h.k == 2 else macaulay_charpoly(h, limits)


def _first_difference(expected: list[int], got: list[int]) -> dict | None:
    for e in range(max(len(expected), len(got))):
        a = expected[e] if e < len(expected) else 0
        b = got[e] if e < len(got) else 0
        if a != b:
            return {"exponent": e, "expected": str(a), "got": str(b)}
    return None


def oracle_compare(
    closed: FactoredCharPoly,
    h: Hypergraph,
    limits: Limits = DEFAULT_LIMITS,
    oracle: CharPolyResult | None = None,
) -> Verdict:
    """Check a factored closed form against the first-principles polynomial of h.

    ``expected`` in a mismatch report is the oracle's coefficient.  When the
    closed form is too large to expand, coefficients are compared modulo
    the oracle's primes (or one fixed prime for the matrix method).
    """
    res = oracle if oracle is not None else oracle_charpoly(h, limits)
    truth = res.poly
    try:
        got = closed.expand(limits.term_budget)
        diff = _first_difference(truth.coeffs(), got.coeffs())
    except BudgetExceeded:
        diff = None
        for p in res.primes_used or [next(word_primes())]:
            got_p = closed.expand_mod(p, budget=max(limits.term_budget, truth.degree + 1))
            diff = _first_difference([c % p for c in truth.coeffs()], got_p.coeffs())
            if diff is not None:
                break
    return Verdict(diff is None, res.method, truth.degree, list(res.primes_used), diff)
