"""Packaged consistency checks, runnable from the CLI as ``verify SUITE``."""

from __future__ import annotations

import random
from dataclasses import dataclass

import mpmath

from .config import DEFAULT_LIMITS, Limits
from .exactpoly import FactoredCharPoly, IntPoly
from .hypergraph import build_hyperpath, random_graph, remove_vertex
from .oracle import macaulay_charpoly, matrix_charpoly, oracle_compare
from .reduction import (
    attach_pendant,
    broom_charpoly,
    charpoly_degree,
    hyperpath_by_induction,
    hyperpath_charpoly,
    hyperstar_charpoly,
    m_expression_from_ratio,
    single_edge_charpoly,
)
from .spectra import spectral_radius


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def graph_pendant_check(g, v: int) -> tuple[IntPoly, IntPoly]:
    """(reduced-formula result, lambda*phi_G - phi_{G-v}) for a graph g and vertex v."""
    phi_g = matrix_charpoly(g).poly
    phi_gv = matrix_charpoly(remove_vertex(g, v)).poly
    mexpr = m_expression_from_ratio(phi_g, phi_gv, 2)
    f, _ = attach_pendant(mexpr, FactoredCharPoly.from_poly(phi_gv, 2), g.n, 2)
    return f.expand(), phi_g.shift(1) - phi_gv


def suite_single_edge(rng, limits: Limits) -> list[Check]:
    out = []
    for k in (2, 3, 4, 5):
        ok = single_edge_charpoly(k).equivalent(hyperpath_charpoly(1, k))
        out.append(Check(f"single edge closed form = hyperpath m=1, k={k}", ok))
    v = oracle_compare(single_edge_charpoly(3), build_hyperpath(1, 3), limits)
    out.append(Check("single edge k=3 vs Macaulay", v.match, str(v.first_mismatch or "")))
    v = oracle_compare(single_edge_charpoly(2), build_hyperpath(1, 2), limits)
    out.append(Check("single edge k=2 vs matrix", v.match))
    return out


def suite_graph_pendant(rng, limits: Limits, count: int = 20) -> list[Check]:
    out = []
    for i in range(count):
        n = rng.randint(1, 8)
        g = random_graph(n, rng)
        v = rng.randrange(n)
        got, want = graph_pendant_check(g, v)
        out.append(Check(f"graph #{i} n={n} v={v}", got == want))
    return out


INDUCTION_CASES = [(m, k) for m in (2, 3, 4) for k in (2, 3)] + [(2, 4)]


def suite_hyperpath_vs_induction(rng, limits: Limits) -> list[Check]:
    return [
        Check(f"P_{m}^({k})", hyperpath_charpoly(m, k).equivalent(hyperpath_by_induction(m, k)))
        for m, k in INDUCTION_CASES
    ]


def suite_oracle_small(rng, limits: Limits, count: int = 20) -> list[Check]:
    out = []
    for name, closed, h in (
        ("P_1^(3)", single_edge_charpoly(3), build_hyperpath(1, 3)),
        ("P_2^(3)", hyperpath_charpoly(2, 3), build_hyperpath(2, 3)),
    ):
        v = oracle_compare(closed, h, limits, oracle=macaulay_charpoly(h, limits))
        out.append(Check(f"{name} closed form vs Macaulay", v.match, str(v.first_mismatch or "")))
    for i in range(count):
        n = rng.randint(1, 6)
        g = random_graph(n, rng)
        ok = matrix_charpoly(g).poly == macaulay_charpoly(g, limits).poly
        out.append(Check(f"graph #{i} n={n}: matrix = Macaulay", ok))
    return out


def degree_instances():
    """(label, factored polynomial, vertex count) for the degree identity."""
    items = []
    for k in (2, 3, 4, 5):
        items.append((f"single edge k={k}", single_edge_charpoly(k), k))
    for k, mmax in ((2, 6), (3, 6), (4, 3)):
        for m in range(1, mmax + 1):
            n = m * (k - 1) + 1
            items.append((f"P_{m}^({k})", hyperpath_charpoly(m, k), n))
    for m, k in INDUCTION_CASES:
        items.append((f"P_{m}^({k}) by induction", hyperpath_by_induction(m, k), m * (k - 1) + 1))
    for s in (1, 2, 3):
        items.append((f"hyperstar s={s} k=3", hyperstar_charpoly(s, 3), 1 + 2 * s))
    items.append(("broom m=2 s=2 k=3", broom_charpoly(2, 2, 3), 5 + 4))
    return items


def suite_degree(rng, limits: Limits) -> list[Check]:
    out = []
    for label, f, n in degree_instances():
        ok = f.is_assembled and f.degree == charpoly_degree(n, f.k)
        out.append(Check(f"{label}: degree {f.degree}", ok))
    return out


def suite_radius_limit(rng, limits: Limits, k: int = 3, mmax: int = 200) -> list[Check]:
    out = []
    r1 = spectral_radius(1, 3)
    out.append(Check("rho(P_1^(3)) = 1 exactly", r1.exact == 1, r1.exact_str()))
    r50 = spectral_radius(50, 3)
    with mpmath.workdps(50):
        gap = abs(r50.value - mpmath.cbrt(4))
    out.append(Check("|rho(P_50^(3)) - 4^(1/3)| < 0.002", gap < 0.002, mpmath.nstr(gap, 6)))
    vals = [spectral_radius(m, k, digits=40).value for m in range(1, mmax + 1)]
    mono = all(a < b for a, b in zip(vals, vals[1:]))
    with mpmath.workdps(40):
        below = all(v < mpmath.root(4, k) for v in vals)
    out.append(Check(f"rho(P_m^({k})) strictly increasing below 4^(1/{k}) for m <= {mmax}", mono and below))
    return out


SUITES = {
    "lemma2": suite_single_edge,
    "theorem5-k2": suite_graph_pendant,
    "hyperpath-vs-induction": suite_hyperpath_vs_induction,
    "oracle-small": suite_oracle_small,
    "degree": suite_degree,
    "radius-limit": suite_radius_limit,
}


def run_suite(name: str, seed: int = 0, limits: Limits = DEFAULT_LIMITS) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](random.Random(seed), limits)
