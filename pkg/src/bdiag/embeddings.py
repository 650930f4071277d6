"""Maps between the partition algebras and the diagram algebras: the set
partition diagrams G_pi, and the coloring of a diagram by its connected
components (colset), which carries the dual of B_D onto colored partitions."""

from __future__ import annotations

from typing import Sequence

from .diagram import (
    BLANK,
    Diagram,
    connected_components,
    is_connected,
    juxtapose,
    permute,
    shuffle_permutations,
    sub_diagram,
)
from .enumeration import by_size, uses_only
from .hopf import coproduct_basis, dual_product_basis, star_basis
from .linalg import CheckReport, LinComb
from . import partitions as P


def g_pi(pi) -> Diagram:
    """G_pi = (|pi|, [1,...,1], phi_pi, max_pi, min_pi)."""
    n = P.size(pi)
    phi = [BLANK] * n
    for b in pi:
        for x, y in zip(b, b[1:]):
            phi[x - 1] = y
    return Diagram(n, (1,) * n, tuple(phi),
                   tuple(sorted(max(b) for b in pi)), tuple(sorted(min(b) for b in pi)))


def pi_of(g: Diagram):
    """Inverse of g_pi on its image; blocks are the connected components."""
    if any(x != 1 for x in g.lam):
        raise ValueError("not the diagram of a set partition")
    pi = P.SET.canon(connected_components(g))
    if g_pi(pi) != g:
        raise ValueError("not the diagram of a set partition")
    return pi


def verify_wsym_embedding(max_size: int) -> CheckReport:
    """G_pi * G_pi' against the M-basis product, Delta(G_pi) against the M coproduct."""
    rep = CheckReport()
    parts = [p for n in range(max_size + 1) for p in P.set_partitions(n)]
    n = 0
    for p in parts:
        for q in parts:
            if P.size(p) + P.size(q) > max_size:
                continue
            lhs = star_basis(g_pi(p), g_pi(q))
            rhs = P.m_product(p, q).map(g_pi)
            if lhs != rhs:
                rep.failure = ("product", (p, q))
                return rep
            n += 1
    rep.checks.append(("product", n))
    for p in parts:
        lhs = coproduct_basis(g_pi(p))
        rhs = LinComb({(g_pi(a), g_pi(b)): c for (a, b), c in P.m_coproduct(p).terms.items()})
        if lhs != rhs:
            rep.failure = ("coproduct", p)
            return rep
    rep.checks.append(("coproduct", len(parts)))
    return rep


class EtaRanking:
    """For each size n, the connected diagrams of B_D with n vertices ranked
    1, 2, ... in canonical-key order.  Tables are built on first use."""

    def __init__(self, generators: Sequence[Diagram]):
        self.generators = tuple(sorted(set(generators)))
        self.tables: dict[int, list[Diagram]] = {}
        self.ranks: dict[Diagram, int] = {}

    def ensure(self, n: int) -> None:
        if n in self.tables:
            return
        levels = by_size(self.generators, n)
        for k in range(n + 1):
            if k in self.tables:
                continue
            conn = sorted(g for g in levels[k] if k > 0 and is_connected(g))
            self.tables[k] = conn
            for i, g in enumerate(conn, start=1):
                self.ranks[g] = i

    def c(self, n: int) -> int:
        self.ensure(n)
        return len(self.tables[n])

    def eta(self, g: Diagram) -> int:
        self.ensure(g.n)
        if g not in self.ranks:
            raise ValueError(f"{g} is not a connected diagram over the generator set")
        return self.ranks[g]

    def bounds(self, n: int) -> P.ColorBounds:
        """Color bounds c_1..c_n; asking beyond n is an error."""
        return P.ColorBounds([self.c(k) for k in range(1, n + 1)])

    def kind(self, n: int) -> P.ColoredKind:
        return P.colored(self.bounds(n))


def colset(g: Diagram, eta: EtaRanking) -> tuple:
    """{[I, eta(G[I])] : I a connected component of G}."""
    if not uses_only(g, eta.generators):
        raise ValueError(f"{g} uses a vertex outside the generator set")
    return P.ColoredKind().canon((I, eta.eta(sub_diagram(g, I))) for I in connected_components(g))


def chi(x: LinComb, eta: EtaRanking) -> LinComb:
    """Linear map D_G -> Psi_colset(G)."""
    return x.map(lambda g: colset(g, eta))


def verify_chi_morphism(generators: Sequence[Diagram], max_vertices: int,
                        eta: EtaRanking | None = None) -> CheckReport:
    """chi(D_G u D_G') = Psi_colset(G) Psi_colset(G') for |G| + |G'| <= max_vertices.

    Also checks that chi is injective on the diagrams of each size.
    """
    eta = eta or EtaRanking(generators)
    levels = by_size(eta.generators, max_vertices)
    kind = eta.kind(max_vertices) if max_vertices else P.ColoredKind()
    rep = CheckReport()
    for n in range(max_vertices + 1):
        images = [colset(g, eta) for g in levels[n]]
        if len(set(images)) != len(images):
            rep.failure = ("injective", n)
            return rep
        for img in images:
            try:
                P.check_partition(img, kind)
            except ValueError as e:
                rep.failure = ("colors", (img, str(e)))
                return rep
    rep.checks.append(("injective", max_vertices))
    k = 0
    for n1 in range(max_vertices + 1):
        for n2 in range(max_vertices + 1 - n1):
            for g in levels[n1]:
                for h in levels[n2]:
                    lhs = chi(dual_product_basis(g, h), eta)
                    rhs = P.psi_product(colset(g, eta), colset(h, eta), kind)
                    if lhs != rhs:
                        rep.failure = ("product", (g, h))
                        return rep
                    k += 1
    rep.checks.append(("product", k))
    return rep


def colset_permutation_check(g: Diagram, h: Diagram, eta: EtaRanking) -> bool:
    """colset of each shuffle of G|H relabels the blocks and keeps the colors."""
    gh = juxtapose(g, h)
    base = colset(gh, eta)
    for s in shuffle_permutations(g.n, h.n):
        pos = {old: new for new, old in enumerate(s, start=1)}
        want = P.ColoredKind().canon((tuple(sorted(pos[v] for v in I)), c) for I, c in base)
        if colset(permute(gh, s), eta) != want:
            return False
    return True

