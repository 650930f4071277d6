"""The algebra of B-diagrams under the star product, its graded dual, and the
Phi / Psi bases."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .diagram import (
    BLANK,
    EPSILON,
    Diagram,
    free_restriction,
    iso_split,
    juxtapose,
    juxtapose_all,
    permute,
    shuffle_permutations,
    sub_diagram,
)
from .linalg import Bialgebra, LinComb


class _Zero:
    """Result of a composition whose half-edges are not free."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "ZERO"

    def __bool__(self) -> bool:
        return False


ZERO = _Zero()


def compose(g: Diagram, top: Diagram, a: Sequence[int] = (), b: Sequence[int] = ()):
    """Glue ``top`` above ``g``, joining outer half-edge a_i of g to inner b_i of top."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise ValueError("composition needs sequences of equal length")
    if any(x >= y for x, y in zip(a, a[1:])):
        raise ValueError("a must be strictly increasing")
    if len(set(b)) != len(b):
        raise ValueError("b must have distinct entries")
    if not set(a) <= set(g.f_up) or not set(b) <= set(top.f_down):
        return ZERO
    w = g.omega
    phi = list(g.phi) + [BLANK if t == BLANK else t + w for t in top.phi]
    for x, y in zip(a, b):
        phi[x - 1] = y + w
    used_b = {y + w for y in b}
    return Diagram(
        g.n + top.n,
        g.lam + top.lam,
        tuple(phi),
        tuple(x for x in g.f_up if x not in a) + tuple(x + w for x in top.f_up),
        g.f_down + tuple(x + w for x in top.f_down if x + w not in used_b),
    )


def composition_specs(g: Diagram, top: Diagram):
    for k in range(min(len(g.f_up), len(top.f_down)) + 1):
        for a in itertools.combinations(g.f_up, k):
            for b in itertools.permutations(top.f_down, k):
                yield a, b


@lru_cache(maxsize=200_000)
def star_terms(g: Diagram, h: Diagram) -> tuple[Diagram, ...]:
    return tuple(compose(g, h, a, b) for a, b in composition_specs(g, h))


def star_basis(g: Diagram, h: Diagram) -> LinComb:
    return LinComb.from_counts(star_terms(g, h))


def star(x: LinComb, y: LinComb) -> LinComb:
    acc: dict = {}
    for g, cg in x.terms.items():
        for h, ch in y.terms.items():
            for t in star_terms(g, h):
                acc[t] = acc.get(t, 0) + cg * ch
    return LinComb(acc)


def star_all(factors: Iterable[Diagram]) -> LinComb:
    out = LinComb.basis(EPSILON)
    for f in factors:
        out = star(out, LinComb.basis(f))
    return out


def medstar_closure(factors: Sequence[Diagram]) -> frozenset[Diagram]:
    return frozenset(star_all(factors).terms)


def split_points(g: Diagram) -> list[int]:
    """Vertices j (1 <= j < n) such that no edge goes from {1..j} to {j+1..n}."""
    blk = g.blocks
    crossing = [0] * (g.n + 1)
    for a, t in g.edges:
        for j in range(blk[a - 1], blk[t - 1]):
            crossing[j] += 1
    return [j for j in range(1, g.n) if crossing[j] == 0]


def indivisible_factorization(g: Diagram) -> list[Diagram]:
    cuts = [0] + split_points(g) + [g.n]
    if g.n == 0:
        return []
    return [sub_diagram(g, range(lo + 1, hi + 1)) for lo, hi in zip(cuts, cuts[1:])]


def is_indivisible(g: Diagram) -> bool:
    return g.n > 0 and not split_points(g)


# coproduct on diagrams


@lru_cache(maxsize=200_000)
def coproduct_basis(g: Diagram) -> LinComb:
    return LinComb.from_counts((sub_diagram(g, I), sub_diagram(g, J)) for I, J in iso_split(g))


def coproduct(x: LinComb) -> LinComb:
    acc = LinComb()
    for g, c in x.terms.items():
        acc = acc + coproduct_basis(g) * c
    return acc


def counit(x: LinComb) -> int:
    return x.coeff(EPSILON)


def b_grade(g: Diagram) -> int:
    return g.omega


B_ALGEBRA = Bialgebra(star_basis, coproduct_basis, EPSILON, b_grade, "B")


# Phi basis and the order


def phi_to_diagram(g: Diagram) -> LinComb:
    """Phi^G as a sum of diagrams: the star product of the indivisible factors."""
    return star_all(indivisible_factorization(g))


def phi_lincomb_to_diagram(x: LinComb) -> LinComb:
    return x.map(phi_to_diagram)


def diagram_to_phi(x: LinComb) -> LinComb:
    """Express a combination of diagrams in the Phi basis (unitriangular solve)."""
    rest = LinComb(x.terms)
    out: dict = {}
    while rest:
        g = min(rest.terms, key=lambda d: (d.tau, d.key))
        c = rest.terms[g]
        out[g] = out.get(g, 0) + c
        rest = rest - phi_to_diagram(g) * c
    return LinComb(out)


@lru_cache(maxsize=100_000)
def downset(g: Diagram) -> frozenset[Diagram]:
    """{H : H precedes G}: sever all edges crossing some subset of cut points."""
    out = set()
    for k in range(g.n):
        for cuts in itertools.combinations(range(1, g.n), k):
            bounds = (0,) + cuts + (g.n,)
            parts = [free_restriction(g, range(lo + 1, hi + 1)) for lo, hi in zip(bounds, bounds[1:])]
            out.add(juxtapose_all(parts))
    if g.n == 0:
        out.add(g)
    return frozenset(out)


def precedes(h: Diagram, g: Diagram) -> bool:
    return h in downset(g)


def upset(g: Diagram) -> frozenset[Diagram]:
    return medstar_closure(indivisible_factorization(g))


# the dual algebra, D basis


def dual_product_basis(g: Diagram, h: Diagram) -> LinComb:
    gh = juxtapose(g, h)
    return LinComb.from_counts(permute(gh, s) for s in shuffle_permutations(g.n, h.n))


def dual_product(x: LinComb, y: LinComb) -> LinComb:
    acc: dict = {}
    for g, cg in x.terms.items():
        for h, ch in y.terms.items():
            for t, ct in dual_product_basis(g, h).terms.items():
                acc[t] = acc.get(t, 0) + cg * ch * ct
    return LinComb(acc)


@lru_cache(maxsize=200_000)
def dual_coproduct_basis(g: Diagram) -> LinComb:
    terms = []
    for k in range(g.n + 1):
        lo = free_restriction(g, range(1, k + 1))
        hi = free_restriction(g, range(k + 1, g.n + 1))
        terms.append((lo, hi))
    return LinComb.from_counts(terms)


def dual_coproduct(x: LinComb) -> LinComb:
    acc = LinComb()
    for g, c in x.terms.items():
        acc = acc + dual_coproduct_basis(g) * c
    return acc


def dual_coproduct_bruteforce(g: Diagram, universe) -> LinComb:
    """Search all pairs (G1, G2) with sizes and weights adding up to those of G
    and keep those for which G occurs in G1 * G2.

    ``universe(weight)`` must return every diagram of that weight.
    """
    terms = []
    for w1 in range(g.omega + 1):
        lows = [d for d in universe(w1) if d.n <= g.n]
        highs = [d for d in universe(g.omega - w1) if d.n <= g.n]
        for g1 in lows:
            if g.lam[: g1.n] != g1.lam:
                continue
            for g2 in highs:
                if g1.n + g2.n != g.n or g.lam[g1.n:] != g2.lam:
                    continue
                k = star_terms(g1, g2).count(g)
                terms.extend([(g1, g2)] * k)
    return LinComb.from_counts(terms)


def dual_grade(g: Diagram) -> int:
    return g.omega


def _dual_mul(g, h):
    return dual_product_basis(g, h)


B_DUAL_ALGEBRA = Bialgebra(_dual_mul, dual_coproduct_basis, EPSILON, dual_grade, "B*")


# Psi basis


@lru_cache(maxsize=100_000)
def psi_to_d_basis(g: Diagram) -> LinComb:
    """Psi_G = sum over H below G of mu(H, G) D_H."""
    elems = sorted(downset(g), key=lambda d: (-d.tau, d.key))
    mu: dict[Diagram, int] = {}
    for h in elems:
        if h == g:
            mu[h] = 1
            continue
        above = [k for k in mu if k != h and h in downset(k)]
        mu[h] = -sum(mu[k] for k in above)
    return LinComb(mu)


def psi_to_d(x: LinComb) -> LinComb:
    return x.map(psi_to_d_basis)


def d_to_psi_basis(g: Diagram) -> LinComb:
    return LinComb({h: 1 for h in downset(g)})


def d_to_psi(x: LinComb) -> LinComb:
    return x.map(d_to_psi_basis)


def psi_product_direct(g1: Diagram, g2: Diagram) -> LinComb:
    """Count, for each candidate G', the splits (I, J) of G' with G'[I]=G1, G'[J]=G2."""
    candidates = {permute(juxtapose(g1, g2), s) for s in shuffle_permutations(g1.n, g2.n)}
    out = {}
    for gp in candidates:
        k = sum(1 for I, J in iso_split(gp) if sub_diagram(gp, I) == g1 and sub_diagram(gp, J) == g2)
        if k:
            out[gp] = k
    return LinComb(out)


def psi_product_via_d(g1: Diagram, g2: Diagram) -> LinComb:
    return d_to_psi(dual_product(psi_to_d_basis(g1), psi_to_d_basis(g2)))


def psi_coproduct_direct(g: Diagram) -> LinComb:
    """Deconcatenation over the juxtaposition factorizations of G."""
    pts = [0] + split_points(g) + [g.n]
    if g.n == 0:
        return LinComb.basis((EPSILON, EPSILON))
    terms = [(sub_diagram(g, range(1, j + 1)), sub_diagram(g, range(j + 1, g.n + 1))) for j in pts]
    return LinComb.from_counts(terms)


def psi_coproduct_via_d(g: Diagram) -> LinComb:
    acc: dict = {}
    for (x, y), c in dual_coproduct(psi_to_d_basis(g)).terms.items():
        for px, cx in d_to_psi_basis(x).terms.items():
            for py, cy in d_to_psi_basis(y).terms.items():
                acc[(px, py)] = acc.get((px, py), 0) + c * cx * cy
    return LinComb(acc)


def biorthogonality_defects(diagrams: Iterable[Diagram]) -> list[tuple[Diagram, Diagram, int]]:
    """Pairs (G, G') in the given set with <Psi_G, Phi^G'> different from delta."""
    ds = list(diagrams)
    bad = []
    for g in ds:
        psi = psi_to_d_basis(g)
        for h in ds:
            val = sum(psi.coeff(k) for k in upset(h))
            if val != (1 if g == h else 0):
                bad.append((g, h, val))
    return bad
