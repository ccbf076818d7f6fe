"""Pendant-edge reduction of hypergraph characteristic polynomials.

The central objects are M-expressions: the ratio phi_H / phi_{H-v}^(k-1)
written as a product of atoms A(z)/B(z), with z the square root of lambda.
Every atom stands for a factor of the shape ``lambda - r(lambda)``, which is
what makes translation (subtracting t / lambda^(k-1) from each factor)
well defined.

Characteristic polynomials are produced for the families whose M-expression
is known in closed form: an isolated vertex, hyperpaths, and anything built
from those by attaching pendant edges at the same vertex.  Graphs (k = 2)
are also accepted, since their M-expression is a single atom.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .config import DEFAULT_LIMITS
from .exactpoly import (
    AssemblyError,
    FactoredCharPoly,
    IntPoly,
    coprime_base,
    factor_over,
)
from .pathpoly import binomial, parity_split, path_charpoly_closed

Z2 = IntPoly([0, 0, 1])  # lambda, as a polynomial in z


@dataclass(frozen=True)
class ReductionConstants:
    k: int
    K1: int
    K2: int


def reduction_constants(k: int) -> ReductionConstants:
    """Multiplicities of the zero and nonzero points of the single-edge variety."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    K2 = k ** (k - 2)
    K1 = (k - 1) ** (k - 1) - K2
    assert K1 >= 0 and (K1 == 0) == (k == 2)
    return ReductionConstants(k, K1, K2)


def charpoly_degree(n: int, k: int) -> int:
    return n * (k - 1) ** (n - 1) if n else 0


def edgeless_charpoly(n: int, k: int) -> FactoredCharPoly:
    return FactoredCharPoly(k, Fraction(charpoly_degree(n, k)))


def single_edge_charpoly(k: int) -> FactoredCharPoly:
    """lambda^(k(k-1)^(k-1) - k^(k-1)) (lambda^k - 1)^(k^(k-2))."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    lam = k * (k - 1) ** (k - 1) - k ** (k - 1)
    return FactoredCharPoly(k, Fraction(lam), ((IntPoly([-1, 1]), k ** (k - 2)),))


def with_isolated(f: FactoredCharPoly, n: int, count: int) -> FactoredCharPoly:
    """Characteristic polynomial after adding ``count`` isolated vertices to an n-vertex hypergraph."""
    if count == 0:
        return f
    k = f.k
    r = (k - 1) ** count
    lam = f.lambda_exponent * r + count * (k - 1) ** (count - 1 + n)
    return FactoredCharPoly(k, lam, tuple((b, e * r) for b, e in f.factors), f.step)


# -- exponent table and the hyperpath closed form -----------------------------


@dataclass(frozen=True)
class ExponentTable:
    m: int
    k: int
    a: dict

    def __getitem__(self, j: int) -> Fraction:
        return self.a[j]


def a_exponents(m: int, k: int) -> ExponentTable:
    """Exponent a(j, m) of phi_{P_j}(lambda^(k/2)) in the hyperpath product."""
    if m < 1 or k < 2:
        raise ValueError(f"need m >= 1 and k >= 2, got m={m}, k={k}")
    c = reduction_constants(k)
    K1, K2 = c.K1, c.K2
    a: dict[int, Fraction] = {m: Fraction(K2**m)}
    for j in range(1, m):
        val = Fraction((m - j + 1) * K1 + 2 * K2) * K1 * K2**j * Fraction(k - 1) ** ((m - j - 2) * (k - 1))
        if val.denominator != 1:
            raise AssemblyError(f"a({j},{m}) = {val} is not an integer for k={k}")
        a[j] = val
    n = m * (k - 1) + 1
    a[0] = Fraction(2, k) * n * (k - 1) ** (m * (k - 1)) - sum((r + 1) * a[r] for r in range(1, m + 1))
    table = ExponentTable(m, k, dict(sorted(a.items())))
    total = sum((j + 1) * Fraction(k, 2) * x for j, x in table.a.items())
    if total != charpoly_degree(n, k):
        raise AssemblyError(f"exponent table degree {total} != {charpoly_degree(n, k)}")
    return table


def hyperpath_charpoly(m: int, k: int) -> FactoredCharPoly:
    """prod_j phi_{P_j}(lambda^(k/2))^a(j,m), assembled as lambda-power times bases in mu."""
    table = a_exponents(m, k)
    lam = Fraction(0)
    factors = []
    for j, a in table.a.items():
        if a == 0:
            continue
        eps, h = parity_split(path_charpoly_closed(j), j)
        lam += Fraction(k, 2) * eps * a
        if not h.is_constant:
            if a.denominator != 1:
                raise AssemblyError(f"fractional exponent {a} on a nonconstant base")
            factors.append((h, int(a)))
    f = FactoredCharPoly(k, lam, tuple(factors))
    f.require_assembled()
    n = m * (k - 1) + 1
    if f.degree != charpoly_degree(n, k):
        raise AssemblyError(f"hyperpath degree {f.degree} != {charpoly_degree(n, k)}")
    return f


# -- M-expressions ------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    num: IntPoly
    den: IntPoly
    exponent: int


def _normalize_atom(num: IntPoly, den: IntPoly, exponent: int) -> Atom:
    if den.is_zero:
        raise ValueError("atom with zero denominator")
    s = min(num.valuation(), den.valuation())
    return Atom(num.unshift(s), den.unshift(s), exponent)


@dataclass(frozen=True)
class MExpression:
    """Product of atoms (num(z)/den(z))**exponent with z**2 = lambda."""

    k: int
    atoms: tuple[Atom, ...]

    def __post_init__(self):
        merged: dict[tuple, int] = {}
        for at in self.atoms:
            at = _normalize_atom(at.num, at.den, at.exponent)
            # each atom must behave like lambda at infinity
            if at.num.degree - at.den.degree != 2 or at.num.leading != at.den.leading:
                raise ValueError("atom is not of the form lambda - r(lambda)")
            key = (at.num, at.den)
            merged[key] = merged.get(key, 0) + at.exponent
        atoms = tuple(Atom(nu, de, e) for (nu, de), e in merged.items() if e)
        object.__setattr__(self, "atoms", atoms)

    @property
    def weight(self) -> int:
        """Total multiplicity: the number of variety points counted with multiplicity."""
        return sum(a.exponent for a in self.atoms)

    def evaluate(self, z):
        """Exact value at the point lambda = z**2 (z nonzero)."""
        val = 1
        for at in self.atoms:
            val = val * (at.num(z) / at.den(z)) ** at.exponent
        return val

    def power(self, e: int) -> MExpression:
        return MExpression(self.k, tuple(Atom(a.num, a.den, a.exponent * e) for a in self.atoms))

    def __mul__(self, other: MExpression) -> MExpression:
        if self.k != other.k:
            raise ValueError("mixed uniformity")
        return MExpression(self.k, self.atoms + other.atoms)


def m_expression_hyperpath(m: int, k: int) -> MExpression:
    """M-expression of P_m at its last vertex.

    Atoms are lambda, then z^(2-k) phi_{P_j}(z^k) / phi_{P_{j-1}}(z^k) for
    j = 1..m.  The case m = 0 is a single vertex, where M = lambda.
    """
    if m < 0 or k < 2:
        raise ValueError(f"need m >= 0 and k >= 2, got m={m}, k={k}")
    if m == 0:
        return MExpression(k, (Atom(Z2, IntPoly([1]), 1),))
    c = reduction_constants(k)
    K1, K2, S = c.K1, c.K2, c.K1 + c.K2
    atoms = [Atom(Z2, IntPoly([1]), K1 * S ** (m - 1))]
    for j in range(1, m + 1):
        e = K2**m if j == m else S ** (m - 1 - j) * K1 * K2**j
        num = path_charpoly_closed(j).substitute_power(k)
        den = path_charpoly_closed(j - 1).substitute_power(k).shift(k - 2)
        atoms.append(Atom(num, den, e))
    return MExpression(k, tuple(atoms))


def m_expression_from_ratio(phi_h: IntPoly, phi_h_minus_v: IntPoly, k: int = 2) -> MExpression:
    """Single-atom M-expression phi_H / phi_{H-v}, valid for graphs only.

    For k = 2 the variety behind M has one point of multiplicity one, so the
    ratio is itself a factor lambda - r(lambda).  For k >= 3 the ratio does
    not determine how translation acts, so this is refused.
    """
    if k != 2:
        raise ValueError("a bare ratio is a valid M-expression only for k = 2")
    return MExpression(2, (Atom(phi_h.substitute_power(2), phi_h_minus_v.substitute_power(2), 1),))


def translate_m(expr: MExpression, t: int, limits=DEFAULT_LIMITS) -> MExpression:
    """Subtract t / lambda^(k-1) inside every atom."""
    if t < 0 or t > limits.max_translation:
        raise ValueError(f"translation must lie in 0..{limits.max_translation}, got {t}")
    if t == 0:
        return expr
    L = 2 * (expr.k - 1)
    atoms = tuple(
        Atom(a.num.shift(L) - a.den.scale(t), a.den.shift(L), a.exponent) for a in expr.atoms
    )
    return MExpression(expr.k, atoms)


# -- assembling characteristic polynomials -------------------------------------


def _split_z(p: IntPoly) -> tuple[int, IntPoly, int]:
    """p(z) = z^a * g(z^s) with g(0) != 0; returns (a, g in z, stride s in z)."""
    a = p.valuation()
    rest = p.unshift(a)
    return a, rest, rest.exponent_stride()


def assemble(
    k: int,
    lambda_exponent: Fraction,
    poly_factors: list[tuple[FactoredCharPoly, int]],
    atoms: list[Atom],
) -> FactoredCharPoly:
    """lambda^lambda_exponent * prod f^e * prod atoms, with all denominators cleared.

    Bases from every source are refined into one pairwise-coprime family;
    each source polynomial is rewritten over it by exact division.  A net
    negative exponent means a denominator did not divide and is an error.
    """
    lam = Fraction(lambda_exponent)
    pieces: list[tuple[IntPoly, int, int]] = []  # (base in lambda^step_src, step_src, exp)
    for f, e in poly_factors:
        lam += f.lambda_exponent * e
        for b, be in f.factors:
            pieces.append((b, f.step, be * e))
    z_pieces: list[tuple[IntPoly, int]] = []
    for at in atoms:
        for p, sign in ((at.num, 1), (at.den, -1)):
            a, rest, _ = _split_z(p)
            lam += Fraction(a, 2) * sign * at.exponent
            unit = rest.coeff(0)
            if rest.is_constant:
                if abs(unit) != 1 and at.exponent:
                    raise AssemblyError(f"atom carries a stray constant {unit}")
                continue
            z_pieces.append((rest, sign * at.exponent))

    step = k
    for b, s, _ in pieces:
        step = gcd(step, s)
    for rest, _ in z_pieces:
        sz = rest.exponent_stride()
        if sz % 2:
            raise AssemblyError("atom factor is not a polynomial in lambda")
        step = gcd(step, sz // 2)

    polys: list[tuple[IntPoly, int]] = []
    for b, s, e in pieces:
        polys.append((b.substitute_power(s // step), e))
    for rest, e in z_pieces:
        polys.append((rest.compress_power(2 * step), e))

    base = coprime_base(p for p, _ in polys)
    exps = [0] * len(base)
    unit = Fraction(1)
    for p, e in polys:
        u, ex = factor_over(p, base)
        unit *= Fraction(u) ** e
        for i, x in enumerate(ex):
            exps[i] += x * e
    if unit != 1:
        raise AssemblyError(f"leftover constant {unit} after clearing denominators")
    for b, e in zip(base, exps):
        if e < 0:
            raise AssemblyError(f"denominator factor {b.to_str('mu')} does not divide (net exponent {e})")
    f = FactoredCharPoly(k, lam, tuple(zip(base, exps)), step)
    f.require_assembled()
    return f


def _check_degree(f: FactoredCharPoly, n: int, what: str) -> None:
    want = charpoly_degree(n, f.k)
    if f.degree != want:
        raise AssemblyError(f"{what}: degree {f.degree} but {n} vertices need {want}")


def attach_pendant(
    mexpr_h: MExpression,
    charpoly_h_minus_v: FactoredCharPoly,
    n: int,
    k: int,
) -> tuple[FactoredCharPoly, MExpression]:
    """Characteristic polynomial of H with one pendant edge added at v.

    Returns the new polynomial and the M-expression of the new hypergraph at
    the same vertex v, ``M^K1 * M(1/lambda^(k-1))^K2``.
    """
    if mexpr_h.k != k or charpoly_h_minus_v.k != k:
        raise ValueError("uniformity mismatch between inputs")
    _check_degree(charpoly_h_minus_v, n - 1, "H - v")
    c = reduction_constants(k)
    shifted = translate_m(mexpr_h, 1)
    m_new = mexpr_h.power(c.K1) * shifted.power(c.K2)
    f = assemble(
        k,
        Fraction((k - 1) ** (n + k - 1)),
        [(charpoly_h_minus_v, (k - 1) ** k)],
        list(m_new.atoms),
    )
    _check_degree(f, n + k - 1, "H_v")
    return f, m_new


def attach_pendant_multi(
    mexpr_h: MExpression,
    charpoly_h_minus_v: FactoredCharPoly,
    n: int,
    k: int,
    s: int,
) -> FactoredCharPoly:
    """Characteristic polynomial of H with s pendant edges added at v."""
    if s < 1:
        raise ValueError("s must be >= 1")
    _check_degree(charpoly_h_minus_v, n - 1, "H - v")
    c = reduction_constants(k)
    atoms: list[Atom] = []
    for t in range(s + 1):
        e = binomial(s, t) * c.K1 ** (s - t) * c.K2**t
        if e:
            atoms.extend(translate_m(mexpr_h, t).power(e).atoms)
    f = assemble(
        k,
        Fraction(s * (k - 1) ** (n + s * (k - 1))),
        [(charpoly_h_minus_v, (k - 1) ** (s * (k - 1) + 1))],
        atoms,
    )
    _check_degree(f, n + s * (k - 1), "H_v^s")
    return f


def attach_pendant_iterated(
    mexpr_h: MExpression,
    charpoly_h_minus_v: FactoredCharPoly,
    n: int,
    k: int,
    s: int,
) -> FactoredCharPoly:
    """Same result as :func:`attach_pendant_multi`, by s single-edge steps at v."""
    mexpr, minus_v, size = mexpr_h, charpoly_h_minus_v, n
    f = None
    for _ in range(s):
        f, mexpr = attach_pendant(mexpr, minus_v, size, k)
        minus_v = with_isolated(minus_v, size - 1, k - 1)
        size += k - 1
    return f


def hyperpath_minus_pendant(phi_prev: FactoredCharPoly, m: int, k: int) -> FactoredCharPoly:
    """phi of P_m minus its last vertex: P_{m-1} plus k-2 isolated vertices."""
    return with_isolated(phi_prev, (m - 1) * (k - 1) + 1, k - 2)


def hyperpath_by_induction(m: int, k: int) -> FactoredCharPoly:
    """P_m built from P_1 by m-1 pendant attachments at the last vertex."""
    if m < 1:
        raise ValueError("m must be >= 1")
    prev = FactoredCharPoly(k, Fraction(1))  # P_0, one vertex
    cur = single_edge_charpoly(k)
    for mm in range(1, m):
        minus_v = hyperpath_minus_pendant(prev, mm, k)
        nxt, _ = attach_pendant(m_expression_hyperpath(mm, k), minus_v, mm * (k - 1) + 1, k)
        prev, cur = cur, nxt
    return cur


def hyperstar_charpoly(s: int, k: int) -> FactoredCharPoly:
    """s edges at one vertex: pendant attachments to a single isolated vertex."""
    return attach_pendant_multi(m_expression_hyperpath(0, k), FactoredCharPoly(k, Fraction(0)), 1, k, s)


def broom_charpoly(m: int, s: int, k: int) -> FactoredCharPoly:
    """Hyperpath P_m with s pendant edges at its last vertex."""
    if m < 1:
        raise ValueError("m must be >= 1")
    prev = FactoredCharPoly(k, Fraction(1)) if m == 1 else hyperpath_charpoly(m - 1, k)
    minus_v = hyperpath_minus_pendant(prev, m, k)
    return attach_pendant_multi(m_expression_hyperpath(m, k), minus_v, m * (k - 1) + 1, k, s)
