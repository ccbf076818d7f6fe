"""Exact univariate polynomials over the integers.

Everything downstream (path polynomials, the pendant-edge reduction, the
resultant oracle) is built on :class:`IntPoly` and :class:`FactoredCharPoly`.
Polynomials are immutable.  Below ``DENSE_LIMIT`` the coefficients are kept
as a dense tuple; above it only the nonzero terms are stored.

Exponents of factored characteristic polynomials are ``fractions.Fraction``
values so that formal, non-integral intermediate exponents can be carried
until a polynomial is fully assembled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .config import DEFAULT_LIMITS

DENSE_LIMIT = 1 << 16


class BudgetExceeded(RuntimeError):
    """An expansion would produce more coefficients than allowed."""

    def __init__(self, needed: int, budget: int):
        super().__init__(f"expansion needs {needed} coefficients, budget is {budget}")
        self.needed = needed
        self.budget = budget


class AssemblyError(ValueError):
    """A factored polynomial is malformed or a division failed to be exact."""


class IntPoly:
    """Univariate polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("_dense", "_sparse")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        if len(c) > DENSE_LIMIT:
            self._dense = None
            self._sparse = tuple((e, x) for e, x in enumerate(c) if x)
        else:
            self._dense = tuple(c)
            self._sparse = None

    @classmethod
    def from_terms(cls, terms) -> IntPoly:
        """Build from ``{exponent: coeff}`` or an iterable of pairs; repeats add."""
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for e, c in items:
            if e < 0:
                raise ValueError("negative exponent in polynomial term")
            if c:
                acc[e] = acc.get(e, 0) + c
        acc = {e: c for e, c in acc.items() if c}
        if not acc:
            return cls()
        deg = max(acc)
        if deg < DENSE_LIMIT:
            dense = [0] * (deg + 1)
            for e, c in acc.items():
                dense[e] = c
            return cls(dense)
        p = cls.__new__(cls)
        p._dense = None
        p._sparse = tuple(sorted(acc.items()))
        return p

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> IntPoly:
        return cls.from_terms({e: c})

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls([c])

    # -- inspection --------------------------------------------------------

    @property
    def is_dense(self) -> bool:
        return self._dense is not None

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        if self._dense is not None:
            return len(self._dense) - 1
        return self._sparse[-1][0]

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero ``(exponent, coeff)`` pairs in increasing exponent order."""
        if self._dense is not None:
            return [(e, c) for e, c in enumerate(self._dense) if c]
        return list(self._sparse)

    def coeffs(self) -> list[int]:
        """Dense coefficient list, index = exponent."""
        if self._dense is not None:
            return list(self._dense)
        out = [0] * (self.degree + 1)
        for e, c in self._sparse:
            out[e] = c
        return out

    def coeff(self, e: int) -> int:
        if self._dense is not None:
            return self._dense[e] if 0 <= e < len(self._dense) else 0
        for ee, c in self._sparse:
            if ee == e:
                return c
        return 0

    @property
    def leading(self) -> int:
        if self.is_zero:
            return 0
        return self.terms()[-1][1] if self._sparse is not None else self._dense[-1]

    @property
    def is_zero(self) -> bool:
        return self._dense == () if self._dense is not None else not self._sparse

    @property
    def is_constant(self) -> bool:
        return self.degree <= 0

    def valuation(self) -> int:
        """Exponent of the lowest nonzero term (0 for the zero polynomial)."""
        t = self.terms()
        return t[0][0] if t else 0

    def exponent_stride(self) -> int:
        """gcd of all exponents with nonzero coefficients (0 for constants)."""
        g = 0
        for e, _ in self.terms():
            g = gcd(g, e)
        return g

    def nterms(self) -> int:
        return len(self.terms())

    # -- arithmetic --------------------------------------------------------

    def _binop_terms(self, other: IntPoly, sign: int) -> IntPoly:
        if self._dense is not None and other._dense is not None:
            a, b = self._dense, other._dense
            n = max(len(a), len(b))
            return IntPoly(
                (a[i] if i < len(a) else 0) + sign * (b[i] if i < len(b) else 0)
                for i in range(n)
            )
        acc = dict(self.terms())
        for e, c in other.terms():
            acc[e] = acc.get(e, 0) + sign * c
        return IntPoly.from_terms(acc)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._binop_terms(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly.constant(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._binop_terms(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> IntPoly:
        return self.scale(-1)

    def scale(self, c: int) -> IntPoly:
        if self._dense is not None:
            return IntPoly(c * x for x in self._dense)
        return IntPoly.from_terms((e, c * x) for e, x in self._sparse)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return mul_expand(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        return pow_expand(self, e)

    def shift(self, s: int) -> IntPoly:
        """Multiply by ``x**s``."""
        if s == 0 or self.is_zero:
            return self
        return IntPoly.from_terms((e + s, c) for e, c in self.terms())

    def unshift(self, s: int) -> IntPoly:
        """Divide by ``x**s``; the division must be exact."""
        if s == 0:
            return self
        if s > self.valuation() and not self.is_zero:
            raise AssemblyError(f"x^{s} does not divide polynomial")
        return IntPoly.from_terms((e - s, c) for e, c in self.terms())

    def substitute_power(self, d: int) -> IntPoly:
        """Return ``p(x**d)``."""
        if d < 1:
            raise ValueError("substitution power must be positive")
        if d == 1:
            return self
        return IntPoly.from_terms((e * d, c) for e, c in self.terms())

    def compress_power(self, d: int) -> IntPoly:
        """Inverse of :meth:`substitute_power`; every exponent must be a multiple of d."""
        if d == 1:
            return self
        out = []
        for e, c in self.terms():
            if e % d:
                raise AssemblyError(f"exponent {e} is not a multiple of {d}")
            out.append((e // d, c))
        return IntPoly.from_terms(out)

    def derivative(self) -> IntPoly:
        return IntPoly.from_terms((e - 1, e * c) for e, c in self.terms() if e)

    def content(self) -> int:
        g = 0
        for _, c in self.terms():
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        if g == 1:
            return self
        return IntPoly.from_terms((e, c // g) for e, c in self.terms())

    def __call__(self, x):
        return eval_exact(self, x)

    # -- comparisons / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.constant(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.terms() == other.terms()

    def __hash__(self) -> int:
        return hash(tuple(self.terms()))

    def sort_key(self) -> tuple:
        c0 = self.coeff(0)
        return (self.degree, abs(c0), c0, tuple(self.coeffs()) if self.is_dense else ())

    def __repr__(self) -> str:
        return f"IntPoly({self.to_str()})"

    def to_str(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in reversed(self.terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs()]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> IntPoly:
        return cls(int(c) for c in data)


X = IntPoly([0, 1])
ONE = IntPoly([1])
ZERO = IntPoly()


def _mul_dense(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    nzb = [(j, y) for j, y in enumerate(b) if y]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in nzb:
                out[i + j] += x * y
    return out


def mul_expand(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact product of two polynomials."""
    if a.is_zero or b.is_zero:
        return ZERO
    if a.is_dense and b.is_dense and a.degree + b.degree < DENSE_LIMIT:
        na, nb = a.nterms(), b.nterms()
        # dense schoolbook unless both operands are very sparse
        if na * nb * 4 >= (a.degree + 1) * (b.degree + 1) or a.degree + b.degree < 64:
            return IntPoly(_mul_dense(a._dense, b._dense))
    acc: dict[int, int] = {}
    tb = b.terms()
    for ea, ca in a.terms():
        for eb, cb in tb:
            e = ea + eb
            acc[e] = acc.get(e, 0) + ca * cb
    return IntPoly.from_terms(acc)


def _binomial_shape(a: IntPoly):
    t = a.terms()
    if len(t) == 2:
        return t
    return None


def pow_expand(a: IntPoly, e: int, budget: int | None = None) -> IntPoly:
    """``a**e`` by binary powering, or the binomial theorem for two-term bases.

    Raises :class:`BudgetExceeded` when the result could hold more than
    ``budget`` coefficients.
    """
    if e < 0:
        raise ValueError("negative power of a polynomial")
    if e == 0:
        return ONE
    budget = DEFAULT_LIMITS.term_budget if budget is None else budget
    stride = a.exponent_stride() or 1
    low = a.valuation()
    needed = e * (a.degree - low) // stride + 1
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    if a.is_zero or e == 1:
        return a
    two = _binomial_shape(a)
    if two is not None:
        (e0, c0), (e1, c1) = two
        out = {}
        binom = 1
        for i in range(e + 1):
            # term C(e,i) (c1 x^e1)^i (c0 x^e0)^(e-i)
            out[e1 * i + e0 * (e - i)] = binom * c1**i * c0 ** (e - i)
            binom = binom * (e - i) // (i + 1)
        return IntPoly.from_terms(out)
    result = ONE
    base = a
    while e:
        if e & 1:
            result = mul_expand(result, base)
        e >>= 1
        if e:
            base = mul_expand(base, base)
    return result


def exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient ``a / b`` in Z[x]; raises :class:`AssemblyError` unless exact."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero:
        return ZERO
    if a.degree < b.degree:
        raise AssemblyError("divisor has larger degree than dividend")
    if not (a.is_dense and b.is_dense):
        return _exact_div_sparse(a, b)
    r = list(a._dense)
    bd = b._dense
    db = len(bd) - 1
    lc = bd[-1]
    q = [0] * (len(r) - db)
    for i in range(len(q) - 1, -1, -1):
        c = r[i + db]
        if c:
            qc, rem = divmod(c, lc)
            if rem:
                raise AssemblyError("division is not exact over the integers")
            q[i] = qc
            for j, y in enumerate(bd):
                if y:
                    r[i + j] -= qc * y
    if any(r[:db]):
        raise AssemblyError("nonzero remainder in exact division")
    return IntPoly(q)


def _exact_div_sparse(a: IntPoly, b: IntPoly) -> IntPoly:
    r = dict(a.terms())
    tb = b.terms()
    db, lc = tb[-1]
    q = {}
    while r:
        top = max(r)
        if top < db:
            raise AssemblyError("nonzero remainder in exact division")
        qc, rem = divmod(r[top], lc)
        if rem:
            raise AssemblyError("division is not exact over the integers")
        s = top - db
        q[s] = qc
        for e, c in tb:
            v = r.get(e + s, 0) - qc * c
            if v:
                r[e + s] = v
            else:
                r.pop(e + s, None)
    return IntPoly.from_terms(q)


def pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b."""
    r = a.coeffs()
    bd = b.coeffs()
    db = len(bd) - 1
    lc = bd[-1]
    while len(r) - 1 >= db and any(r):
        c = r[-1]
        r = [lc * x for x in r]
        s = len(r) - 1 - db
        for j, y in enumerate(bd):
            r[s + j] -= c * y
        while r and r[-1] == 0:
            r.pop()
    return IntPoly(r)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd in Z[x] (positive leading coefficient), by primitive PRS."""
    a, b = a.primitive(), b.primitive()
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = pseudo_rem(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def coprime_base(polys: Iterable[IntPoly]) -> list[IntPoly]:
    """Pairwise coprime primitive polynomials that generate every input.

    Each nonconstant input is, up to a constant, a product of powers of the
    returned polynomials.
    """
    bases: list[IntPoly] = []
    work = [p.primitive() for p in polys if not p.is_constant]
    while work:
        f = work.pop()
        if f.is_constant:
            continue
        for i, b in enumerate(bases):
            g = poly_gcd(f, b)
            if not g.is_constant:
                del bases[i]
                work.extend(p for p in (g, exact_div(b, g), exact_div(f.primitive(), g)) if not p.is_constant)
                break
        else:
            bases.append(f)
    return sorted(bases, key=IntPoly.sort_key)


def squarefree_coprime_base(polys: Iterable[IntPoly]) -> list[IntPoly]:
    """Like :func:`coprime_base` but every returned polynomial is squarefree."""
    bases = coprime_base(polys)
    while True:
        for i, b in enumerate(bases):
            g = poly_gcd(b, b.derivative())
            if not g.is_constant:
                rest = bases[:i] + bases[i + 1:]
                bases = coprime_base(rest + [g, exact_div(b, g)])
                break
        else:
            return bases


def factor_over(p: IntPoly, base: Sequence[IntPoly]) -> tuple[int, list[int]]:
    """Write ``p = unit * prod(base[i]**exps[i])`` by repeated exact division."""
    exps = [0] * len(base)
    for i, b in enumerate(base):
        while p.degree >= b.degree:
            try:
                p = exact_div(p, b)
            except AssemblyError:
                break
            exps[i] += 1
    if not p.is_constant:
        raise AssemblyError("polynomial is not a product of the given base")
    return p.coeff(0), exps


# -- evaluation -------------------------------------------------------------


def eval_exact(p: IntPoly, x):
    """Horner evaluation in whatever exact ring ``x`` lives in."""
    if p.is_dense:
        acc = 0 * x
        for c in reversed(p._dense):
            acc = acc * x + c
        return acc
    acc = 0 * x
    prev = None
    for e, c in reversed(p.terms()):
        if prev is not None:
            acc = acc * x ** (prev - e)
        acc = acc + c
        prev = e
    if prev:
        acc = acc * x**prev
    return acc


def eval_mod(p: IntPoly, x: int, q: int) -> int:
    """``p(x) mod q``."""
    x %= q
    if p.is_dense:
        acc = 0
        for c in reversed(p._dense):
            acc = (acc * x + c) % q
        return acc
    acc = 0
    for e, c in p.terms():
        acc = (acc + c * pow(x, e, q)) % q
    return acc


class AlgebraicNumber:
    """Element of Q[t]/(m(t)), used to evaluate at exact algebraic points.

    ``AlgebraicNumber.generator(m)`` is a root of the (irreducible) ``m``;
    with ``m = t^2 + 1`` this gives exact complex rationals.
    """

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs: Sequence, modulus: IntPoly):
        self.modulus = modulus
        self.coeffs = self._reduce([Fraction(c) for c in coeffs])

    @classmethod
    def generator(cls, modulus: IntPoly) -> AlgebraicNumber:
        return cls([0, 1], modulus)

    def _reduce(self, c: list[Fraction]) -> tuple[Fraction, ...]:
        m = self.modulus.coeffs()
        d = len(m) - 1
        lc = Fraction(m[-1])
        while len(c) > d:
            top = c.pop() / lc
            if top:
                s = len(c) - d
                for j in range(d):
                    c[s + j] -= top * m[j]
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    def _lift(self, other) -> AlgebraicNumber:
        if isinstance(other, AlgebraicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber([other], self.modulus)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(o.coeffs):
            a[i] += c
        return AlgebraicNumber(a, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber([-c for c in self.coeffs], self.modulus)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = [Fraction(0)] * max(len(self.coeffs) + len(o.coeffs) - 1, 0)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(o.coeffs):
                out[i + j] += x * y
        return AlgebraicNumber(out, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = AlgebraicNumber([1], self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"AlgebraicNumber({list(map(str, self.coeffs))} mod {self.modulus.to_str('t')})"


# -- modular interpolation and CRT -------------------------------------------


def interpolate(points: Sequence[tuple[int, int]], d: int, q: int) -> IntPoly:
    """Polynomial of degree <= d through ``points`` modulo the prime q.

    Uses Newton divided differences on the first d+1 points and checks the
    rest for consistency.  Coefficients are returned in ``[0, q)``.
    """
    if len(points) < d + 1:
        raise ValueError(f"need {d + 1} points, got {len(points)}")
    if q <= d + 1:
        raise ValueError("modulus too small for the requested degree")
    xs = [x % q for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae in interpolation")
    use = points[: d + 1]
    x = [p[0] % q for p in use]
    dd = [p[1] % q for p in use]
    for j in range(1, d + 1):
        for i in range(d, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) * pow(x[i] - x[i - j], -1, q) % q
    # expand Newton form into monomial coefficients
    coeffs = [0]
    for i in range(d, -1, -1):
        # coeffs = coeffs * (X - x[i]) + dd[i]
        nxt = [0] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] = (nxt[j + 1] + c) % q
            nxt[j] = (nxt[j] - c * x[i]) % q
        nxt[0] = (nxt[0] + dd[i]) % q
        coeffs = nxt
    poly = IntPoly(coeffs)
    for xi, yi in points[d + 1:]:
        if eval_mod(poly, xi, q) != yi % q:
            raise ValueError("inconsistent overdetermined interpolation data")
    return poly


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine ``x = r1 mod m1`` and ``x = r2 mod m2`` (coprime moduli)."""
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2


def crt_polys(residues: Sequence[IntPoly], primes: Sequence[int]) -> tuple[IntPoly, int]:
    """Symmetric CRT lift of polynomials given modulo pairwise distinct primes."""
    deg = max(p.degree for p in residues)
    coeffs = [0] * (deg + 1)
    modulus = 1
    for poly, q in zip(residues, primes):
        c = poly.coeffs()
        for i in range(deg + 1):
            coeffs[i], _ = crt_pair(coeffs[i], modulus, c[i] if i < len(c) else 0, q)
        modulus *= q
    half = modulus // 2
    return IntPoly(c - modulus if c > half else c for c in coeffs), modulus


# -- factored characteristic polynomials --------------------------------------


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class FactoredCharPoly:
    """``lambda**lambda_exponent * prod(base(mu)**exp)`` with ``mu = lambda**step``.

    ``step`` defaults to ``k``; it is smaller only for polynomials that are
    not functions of ``lambda**k`` (e.g. non-bipartite graphs when k = 2).
    Bases are normalized on construction: factors of mu move into the power
    of lambda, equal bases merge, constant bases must multiply to one.
    """

    k: int
    lambda_exponent: Fraction
    factors: tuple = ()
    step: int | None = None

    def __post_init__(self):
        step = self.k if self.step is None else self.step
        if step < 1 or self.k < 2:
            raise ValueError("k must be >= 2 and step >= 1")
        lam = _as_fraction(self.lambda_exponent)
        merged: dict[IntPoly, int] = {}
        unit = Fraction(1)
        for base, exp in self.factors:
            exp = int(exp)
            if exp == 0:
                continue
            v = base.valuation()
            if v:
                lam += Fraction(step * v * exp)
                base = base.unshift(v)
            if base.is_constant:
                unit *= Fraction(base.coeff(0)) ** exp
                continue
            merged[base] = merged.get(base, 0) + exp
        if unit != 1:
            raise AssemblyError(f"constant factors multiply to {unit}, expected 1")
        facs = tuple(sorted(((b, e) for b, e in merged.items() if e), key=lambda t: t[0].sort_key()))
        object.__setattr__(self, "lambda_exponent", lam)
        object.__setattr__(self, "factors", facs)
        object.__setattr__(self, "step", step)

    @property
    def degree(self) -> Fraction:
        return self.lambda_exponent + self.step * sum(e * b.degree for b, e in self.factors)

    @property
    def is_assembled(self) -> bool:
        le = self.lambda_exponent
        return le.denominator == 1 and le >= 0 and all(e > 0 for _, e in self.factors)

    def require_assembled(self) -> None:
        if self.lambda_exponent.denominator != 1:
            raise AssemblyError(f"non-integral power of lambda: {self.lambda_exponent}")
        if self.lambda_exponent < 0:
            raise AssemblyError(f"negative power of lambda: {self.lambda_exponent}")
        for b, e in self.factors:
            if e < 0:
                raise AssemblyError(f"negative exponent {e} on base {b.to_str('mu')}")

    def vertex_count(self) -> int:
        """The n with n(k-1)^(n-1) equal to the degree (the map is injective)."""
        deg = self.degree
        n = 0
        while n * (self.k - 1) ** max(n - 1, 0) < deg:
            n += 1
        if n * (self.k - 1) ** max(n - 1, 0) != deg:
            raise AssemblyError(f"degree {deg} is not n(k-1)^(n-1) for k={self.k}")
        return n

    def mu_poly(self, budget: int | None = None) -> IntPoly:
        """Product of the bases, expanded in mu."""
        budget = DEFAULT_LIMITS.term_budget if budget is None else budget
        needed = sum(e * b.degree for b, e in self.factors) + 1
        if needed > budget:
            raise BudgetExceeded(needed, budget)
        out = ONE
        for b, e in self.factors:
            out = mul_expand(out, pow_expand(b, e, budget))
        return out

    def expand(self, budget: int | None = None) -> IntPoly:
        """Dense (or sparse, at high degree) polynomial in lambda."""
        self.require_assembled()
        p = self.mu_poly(budget).substitute_power(self.step).shift(int(self.lambda_exponent))
        if p.leading != 1:
            raise AssemblyError(f"expanded polynomial is not monic (leading {p.leading})")
        return p

    def expand_mod(self, q: int, budget: int | None = None) -> IntPoly:
        """Coefficients of :meth:`expand` reduced into ``[0, q)``."""
        self.require_assembled()
        budget = DEFAULT_LIMITS.term_budget if budget is None else budget
        needed = sum(e * b.degree for b, e in self.factors) + 1
        if needed > budget:
            raise BudgetExceeded(needed, budget)
        out = [1]
        for b, e in self.factors:
            base = [c % q for c in b.coeffs()]
            while e:
                if e & 1:
                    out = [c % q for c in _mul_dense(out, base)]
                e >>= 1
                if e:
                    base = [c % q for c in _mul_dense(base, base)]
        mu = IntPoly(out)
        return mu.substitute_power(self.step).shift(int(self.lambda_exponent))

    def evaluate(self, x):
        """Exact value at a nonzero exact point ``x`` (Fraction, AlgebraicNumber, ...)."""
        le = self.lambda_exponent
        if le.denominator != 1:
            raise AssemblyError("cannot evaluate with a fractional power of lambda")
        mu = x**self.step
        val = x ** int(le) if le >= 0 else 1 / (x ** int(-le))
        for b, e in self.factors:
            v = eval_exact(b, mu)
            val = val * (v**e if e >= 0 else 1 / v ** (-e))
        return val

    def eval_mod(self, x: int, q: int) -> int:
        self.require_assembled()
        mu = pow(x, self.step, q)
        acc = pow(x, int(self.lambda_exponent), q)
        for b, e in self.factors:
            acc = acc * pow(eval_mod(b, mu, q), e, q) % q
        return acc

    # -- equality up to regrouping of factors -----------------------------

    def _restep(self, step: int) -> list[tuple[IntPoly, int]]:
        r = self.step // step
        return [(b.substitute_power(r), e) for b, e in self.factors]

    def equivalent(self, other: FactoredCharPoly) -> bool:
        """True when both describe the same polynomial in lambda."""
        if self.lambda_exponent != other.lambda_exponent:
            return False
        step = gcd(self.step, other.step)
        fa, fb = self._restep(step), other._restep(step)
        base = coprime_base([b for b, _ in fa] + [b for b, _ in fb])
        return _exponents_over(fa, base) == _exponents_over(fb, base)

    def canonical(self) -> FactoredCharPoly:
        """Regroup the bases into a squarefree, pairwise coprime family."""
        base = squarefree_coprime_base(b for b, _ in self.factors)
        unit, exps = _exponents_over(self.factors, base)
        if unit != 1:
            raise AssemblyError(f"bases carry a stray constant {unit}")
        return FactoredCharPoly(self.k, self.lambda_exponent, tuple(zip(base, exps)), self.step)

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        d = {
            "k": self.k,
            "lambda_exponent": {
                "num": str(self.lambda_exponent.numerator),
                "den": str(self.lambda_exponent.denominator),
            },
            "factors": [{"base_mu": b.to_json(), "exp": str(e)} for b, e in self.factors],
        }
        if self.step != self.k:
            d["step"] = self.step
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> FactoredCharPoly:
        le = d["lambda_exponent"]
        return cls(
            k=int(d["k"]),
            lambda_exponent=Fraction(int(le["num"]), int(le["den"])),
            factors=tuple((IntPoly.from_json(f["base_mu"]), int(f["exp"])) for f in d["factors"]),
            step=d.get("step"),
        )

    @classmethod
    def from_json(cls, s: str) -> FactoredCharPoly:
        return cls.from_dict(json.loads(s))

    @classmethod
    def from_poly(cls, p: IntPoly, k: int) -> FactoredCharPoly:
        """Wrap an expanded polynomial: peel off lambda, use mu = lambda^k if possible."""
        v = p.valuation()
        rest = p.unshift(v)
        stride = rest.exponent_stride()
        step = k if stride and stride % k == 0 else (gcd(stride, k) or k)
        if rest.is_constant:
            if rest.coeff(0) != 1:
                raise AssemblyError("constant polynomial other than one")
            return cls(k, Fraction(v), (), step)
        mu = rest.compress_power(step)
        base = squarefree_coprime_base([mu])
        unit, exps = factor_over(mu, base)
        if unit != 1:
            raise AssemblyError(f"polynomial is not monic (unit {unit})")
        facs = tuple((b, e) for b, e in zip(base, exps) if e)
        return cls(k, Fraction(v), facs, step)


def _exponents_over(factors, base) -> tuple[Fraction, list[int]]:
    unit = Fraction(1)
    total = [0] * len(base)
    for b, e in factors:
        u, ex = factor_over(b, base)
        unit *= Fraction(u) ** e
        for i, x in enumerate(ex):
            total[i] += x * e
    return unit, total


def expand(f: FactoredCharPoly, budget: int | None = None) -> IntPoly:
    return f.expand(budget)
