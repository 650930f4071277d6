"""Verification suites: each runs a family of exact checks and returns one
``Check`` per property, with timing and a counterexample when it fails."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import enumeration as E
from . import heisenberg as H
from . import hopf
from . import partitions as P
from .embeddings import EtaRanking, colset_permutation_check, g_pi, verify_chi_morphism, verify_wsym_embedding
from .linalg import Bialgebra, CheckReport, LinComb, check_bialgebra


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.suite}/{self.name} ({self.seconds:.2f}s)"
        return text + (f": {self.detail}" if self.detail else "")


def run(suite: str, name: str, fn: Callable) -> Check:
    t = time.perf_counter()
    try:
        res = fn()
    except Exception as e:  # a crash is reported as a failed check
        return Check(suite, name, False, f"{type(e).__name__}: {e}", time.perf_counter() - t)
    dt = time.perf_counter() - t
    if isinstance(res, CheckReport):
        return Check(suite, name, res.ok, repr(res), dt)
    if isinstance(res, tuple):
        return Check(suite, name, bool(res[0]), str(res[1]), dt)
    return Check(suite, name, bool(res), "", dt)


@dataclass
class Bounds:
    max_weight: int = 3
    max_size: int = 4
    duality_weight: int = 4
    preset_weight: int = 6
    order: int = 8
    max_n: int = 8
    seed: int = 0
    extra: dict = field(default_factory=dict)


def _flat(levels: dict) -> list:
    return [g for k in sorted(levels) for g in levels[k]]


# Hopf axioms


def partition_bialgebras(max_size: int):
    two = P.colored(None, 2)
    out = []
    for name, kind in (("WSym", P.SET), ("BWSym", P.LIST), ("CWSym(2)", two)):
        sample = [p for n in range(max_size + 1) for p in P.partitions_of(kind, n)]
        out.append((name, P.bialgebra_phi(kind), sample))
        dual = name.replace("WSym", "PiQSym") if name != "WSym" else "PiQSym"
        out.append((dual, P.bialgebra_dual(kind), sample))
    sample = [p for n in range(max_size + 1) for p in P.set_partitions(n)]
    out.append(("WSym[M]", Bialgebra(P.m_product, P.m_coproduct, (), P.size, "M"), sample))
    return out


def suite_hopf_axioms(b: Bounds) -> list[Check]:
    out = []
    sample = _flat(E.full_alphabet_by_weight(b.max_weight))
    out.append(run("hopf-axioms", f"B omega<={b.max_weight}",
                   lambda: check_bialgebra(hopf.B_ALGEBRA, sample, b.max_weight)))
    out.append(run("hopf-axioms", f"B* omega<={b.max_weight}",
                   lambda: check_bialgebra(hopf.B_DUAL_ALGEBRA, sample, b.max_weight)))
    for name, B, smp in partition_bialgebras(b.max_size):
        out.append(run("hopf-axioms", f"{name} size<={b.max_size}",
                       lambda B=B, smp=smp: check_bialgebra(B, smp, b.max_size)))
    return out


# duality


def duality_report(levels: dict, max_weight: int) -> CheckReport:
    """Both pairing identities for every triple with total weight <= max_weight.

    ``levels`` maps each weight to all diagrams of that weight in a family
    closed under the four operations.
    """
    rep = CheckReport()
    universe = _flat({w: levels[w] for w in levels if w <= max_weight})
    pairs = [(g, h) for g in universe for h in universe if g.omega + h.omega <= max_weight]
    # <D_G, G1 * G2> against <Delta_*(D_G), G1 (x) G2>
    inv: dict = {}
    for g, h in pairs:
        for t in hopf.star_terms(g, h):
            inv.setdefault(t, {})
            inv[t][(g, h)] = inv[t].get((g, h), 0) + 1
    for G in universe:
        if hopf.dual_coproduct_basis(G) != LinComb(inv.get(G, {})):
            rep.failure = ("coproduct pairing", G)
            return rep
    rep.checks.append(("coproduct pairing", len(universe)))
    # <D_G1 u D_G2, G'> against <D_G1 (x) D_G2, Delta(G')>
    inv = {}
    for G in universe:
        for (g, h), c in hopf.coproduct_basis(G).terms.items():
            inv.setdefault((g, h), {})[G] = c
    for g, h in pairs:
        if hopf.dual_product_basis(g, h) != LinComb(inv.get((g, h), {})):
            rep.failure = ("product pairing", (g, h))
            return rep
    rep.checks.append(("product pairing", len(pairs)))
    return rep


def dual_coproduct_oracle(max_weight: int, sample_every: int = 1) -> CheckReport:
    """The k-split formula for Delta_* against a search over all factor pairs."""
    levels = E.full_alphabet_by_weight(max_weight)
    rep = CheckReport()
    n = 0
    for G in _flat(levels)[::sample_every]:
        if hopf.dual_coproduct_basis(G) != hopf.dual_coproduct_bruteforce(G, lambda w: levels[w]):
            rep.failure = ("dual coproduct", G)
            return rep
        n += 1
    rep.checks.append(("dual coproduct", n))
    return rep


def partition_duality_report(kind: P.Kind, max_size: int) -> CheckReport:
    """<x u y, z> = <x (x) y, Delta z> and <Delta_. z, x (x) y> = <z, x y> by brute force."""
    rep = CheckReport()
    parts = {n: list(P.partitions_of(kind, n)) for n in range(max_size + 1)}
    n_checked = 0
    for n in range(max_size + 1):
        for z in parts[n]:
            cop = P.phi_coproduct(z, kind)
            dcop = P.dual_coproduct(z, kind)
            for k in range(n + 1):
                for x in parts[k]:
                    for y in parts[n - k]:
                        if P.dual_product(x, y, kind).coeff(z) != cop.coeff((x, y)):
                            rep.failure = ("product pairing", (x, y, z))
                            return rep
                        if dcop.coeff((x, y)) != P.phi_product(x, y, kind).coeff(z):
                            rep.failure = ("coproduct pairing", (x, y, z))
                            return rep
                        n_checked += 1
    rep.checks.append(("triples", n_checked))
    return rep


def word_engine_report(max_size: int) -> CheckReport:
    """word_dual_product on factor words against the direct set-partition product,
    for all pairs of partitions of size at most ``max_size``."""
    rep = CheckReport()
    table = P.partition_delta_table(P.SET, 2 * max_size)
    parts = [p for n in range(max_size + 1) for p in P.set_partitions(n)]
    n = 0
    for p in parts:
        for q in parts:
            direct = P.psi_product(p, q)
            if P.dual_product_via_words(p, q, P.SET, table) != direct or P.dual_product(p, q) != direct:
                rep.failure = ("word engine", (p, q))
                return rep
            n += 1
    rep.checks.append(("pairs", n))
    return rep


def suite_duality(b: Bounds) -> list[Check]:
    out = []
    out.append(run("duality", f"full alphabet omega<={b.duality_weight}",
                   lambda: duality_report(E.full_alphabet_by_weight(b.duality_weight), b.duality_weight)))
    for name in ("W", "BW", "S"):
        out.append(run("duality", f"{name} omega<={b.preset_weight}",
                       lambda name=name: duality_report(E.by_weight(E.PRESETS[name], b.preset_weight),
                                                        b.preset_weight)))
    out.append(run("duality", f"dual coproduct oracle omega<={b.duality_weight}",
                   lambda: dual_coproduct_oracle(b.duality_weight)))
    out.append(run("duality", f"word engine size<={b.max_size}", lambda: word_engine_report(b.max_size)))
    for name, kind in (("PiQSym", P.SET), ("BPiQSym", P.LIST), ("CPiQSym(2)", P.colored(None, 2))):
        size = b.max_size if name != "CPiQSym(2)" else min(b.max_size, 3)
        out.append(run("duality", f"{name} pairing size<={size}",
                       lambda kind=kind, size=size: partition_duality_report(kind, size)))
    return out


# Phi / Psi bases


def phi_psi_report(max_weight: int) -> CheckReport:
    rep = CheckReport()
    ds = _flat(E.full_alphabet_by_weight(max_weight))
    for g in ds:
        if hopf.d_to_psi(hopf.psi_to_d_basis(g)) != LinComb.basis(g):
            rep.failure = ("psi <-> D", g)
            return rep
        if hopf.diagram_to_phi(hopf.phi_to_diagram(g)) != LinComb.basis(g):
            rep.failure = ("phi <-> diagram", g)
            return rep
    rep.checks.append(("change of basis", len(ds)))
    bad = hopf.biorthogonality_defects(ds)
    if bad:
        rep.failure = ("biorthogonality", bad[0])
        return rep
    rep.checks.append(("biorthogonality", len(ds) ** 2))
    n = 0
    for g, h in itertools.product(ds, repeat=2):
        if g.omega + h.omega > max_weight:
            continue
        if hopf.psi_product_direct(g, h) != hopf.psi_product_via_d(g, h):
            rep.failure = ("psi product", (g, h))
            return rep
        n += 1
    rep.checks.append(("psi product", n))
    for g in ds:
        if hopf.psi_coproduct_direct(g) != hopf.psi_coproduct_via_d(g):
            rep.failure = ("psi coproduct", g)
            return rep
    rep.checks.append(("psi coproduct", len(ds)))
    return rep


def suite_phi_psi(b: Bounds) -> list[Check]:
    return [run("phi-psi", f"omega<={b.max_weight}", lambda: phi_psi_report(b.max_weight))]


# embeddings


def g_pi_structure(max_size: int) -> CheckReport:
    rep = CheckReport()
    k = 0
    for n in range(max_size + 1):
        seen = set()
        for p in P.set_partitions(n):
            g = g_pi(p)
            if g in seen:
                rep.failure = ("injective", p)
                return rep
            seen.add(g)
            if hopf.is_indivisible(g) != P.indivisible(p):
                rep.failure = ("indivisible", p)
                return rep
            k += 1
    rep.checks.append(("g_pi", k))
    return rep


def aleph_report(max_size: int) -> CheckReport:
    rep = CheckReport()
    parts = [p for n in range(max_size + 1) for p in P.set_partitions(n)]
    for p in parts:
        lhs = P.phi_coproduct(P.aleph(p), P.LIST)
        rhs = LinComb({(P.aleph(a), P.aleph(b)): c for (a, b), c in P.phi_coproduct(p).terms.items()})
        if lhs != rhs:
            rep.failure = ("coproduct", p)
            return rep
        for q in parts:
            if P.size(p) + P.size(q) > max_size:
                continue
            if P.aleph(P.shifted_union(p, q)) != P.shifted_union(P.aleph(p), P.aleph(q), P.LIST):
                rep.failure = ("product", (p, q))
                return rep
    rep.checks.append(("aleph", len(parts)))
    return rep


def colset_shuffle_report(max_vertices: int) -> CheckReport:
    rep = CheckReport()
    gens = E.PRESETS["FREE12"]
    eta = EtaRanking(gens)
    levels = E.by_size(gens, max_vertices)
    n = 0
    for n1 in range(1, max_vertices):
        for n2 in range(1, max_vertices + 1 - n1):
            for g in levels[n1]:
                for h in levels[n2]:
                    if not colset_permutation_check(g, h, eta):
                        rep.failure = ("colset", (g, h))
                        return rep
                    n += 1
    rep.checks.append(("pairs", n))
    return rep


def suite_embeddings(b: Bounds) -> list[Check]:
    size = max(b.max_size, 5)
    return [
        run("embeddings", f"G_pi products and coproducts size<={b.max_size}",
            lambda: verify_wsym_embedding(b.max_size)),
        run("embeddings", f"G_pi injective, indivisibility size<={size}", lambda: g_pi_structure(size)),
        run("embeddings", f"aleph morphism size<={b.max_size}", lambda: aleph_report(b.max_size)),
        run("embeddings", "colset under vertex shuffles", lambda: colset_shuffle_report(3)),
    ]


def suite_chi(b: Bounds) -> list[Check]:
    n12 = b.extra.get("chi_free12", 4)
    nw = b.extra.get("chi_w", 5)
    return [
        run("chi", f"two generators up to {n12} vertices",
            lambda: verify_chi_morphism(E.PRESETS["FREE12"], n12)),
        run("chi", f"W up to {nw} vertices", lambda: verify_chi_morphism(E.PRESETS["W"], nw)),
    ]


# enumeration


BETA_S = [1, 2, 5, 14, 43, 142, 499, 1850, 7193, 29186]


def _both(dd, stat: str, limit: int, by: str):
    """(recurrence values, brute-force values) for beta (by size) or alpha (by weight)."""
    with E.cap_scope(limit, limit):
        brute = E.brute_counts(dd, limit, by)
    if stat == "beta":
        return [E.beta(dd, n) for n in range(limit + 1)], brute["beta"]
    return [E.alpha(dd, n) for n in range(limit + 1)], brute["alpha"]


def sequence_check(dd, stat: str, limit: int, want: list[int]):
    rec, brute = _both(dd, stat, limit, "size" if stat == "beta" else "weight")
    ok = rec == brute == want[: limit + 1]
    return ok, f"recurrence={rec} brute={brute}"


def connected_check(dd, limit: int, want: list[int]):
    with E.cap_scope(limit, limit):
        c = E.connected_counts(dd, limit)
    return c[1:] == want[1: limit + 1], f"c={c}"


def enumdiag_report(max_weight: int) -> CheckReport:
    rep = CheckReport()
    with E.cap_scope(max_weight, max_weight):
        d = E.brute_counts(E.all_elementary(max_weight), max_weight, "weight")["d"]
    for p in range(max_weight + 1):
        for q in range(p + 1):
            if E.enumdiag(p, q) != d[p][q] or E.count_d(E.all_elementary(max(p, 1)), p, q) != d[p][q]:
                rep.failure = ("d", (p, q, E.enumdiag(p, q), d[p][q]))
                return rep
    rep.checks.append(("d_{p,q}", max_weight))
    return rep


def kappa_identities(limit: int) -> CheckReport:
    rep = CheckReport()
    for n in range(limit + 1):
        for k in range(n + 1):
            if E.count_kappa(E.PRESETS["W"], n, k) != H.stirling2(n, k):
                rep.failure = ("stirling", (n, k))
                return rep
        for k in range(2 * n + 1):
            want = H.lah(n, k - n) if k >= n else 0
            if E.count_kappa(E.PRESETS["BW"], n, k) != want:
                rep.failure = ("lah", (n, k))
                return rep
    rep.checks.append(("kappa", limit))
    return rep


def suite_enumeration(b: Bounds) -> list[Check]:
    s, f = E.PRESETS["S"], E.PRESETS["F"]
    bells = [H.bell(n) for n in range(8)]
    facts = [1, 1, 2, 6, 24, 120, 720]
    fib = [H.fibonacci(n) for n in range(11)]
    return [
        run("enumeration", "beta S n<=9", lambda: sequence_check(s, "beta", 9, BETA_S)),
        run("enumeration", "beta W = Bell n<=7", lambda: sequence_check(E.PRESETS["W"], "beta", 7, bells)),
        run("enumeration", "c BW = n! n<=6", lambda: connected_check(E.PRESETS["BW"], 6, facts)),
        run("enumeration", "alpha F = Fibonacci n<=10", lambda: sequence_check(f, "alpha", 10, fib)),
        run("enumeration", "c S = (2,1,0,...) n<=6", lambda: connected_check(s, 6, [0, 2, 1, 0, 0, 0, 0])),
        run("enumeration", "kappa W = Stirling, kappa BW = Lah n<=6", lambda: kappa_identities(6)),
        run("enumeration", f"enumdiag = brute force p<={b.extra.get('enumdiag', 5)}",
            lambda: enumdiag_report(b.extra.get("enumdiag", 5))),
    ]


# exponential formula and forests


def exp_formula(name: str, order: int) -> CheckReport:
    dd = E.resolve_generators(name)
    with E.cap_scope(order, order):
        return E.verify_exp_formula(dd, order)


def suite_exp_formula(b: Bounds) -> list[Check]:
    out = [run("exp-formula", f"{name} order {b.order}", lambda name=name: exp_formula(name, b.order))
           for name in ("W", "BW", "S", "F", "T:{2}")]
    for E_ in ((2,), (3,), (1, 2)):
        label = "{" + ",".join(map(str, E_)) + "}"
        out.append(run("exp-formula", f"forest {label} order 6",
                       lambda E_=E_: E.forest_series(E_, 6, brute_order=5)[1]))
    return out


# Katriel


def katriel_report(max_n: int, seed: int) -> CheckReport:
    rep = CheckReport()
    for n in range(max_n + 1):
        if not H.check_katriel(n):
            rep.failure = ("katriel", n)
            return rep
    rep.checks.append(("katriel", max_n))
    rng = random.Random(seed)
    for _ in range(50):
        w = "".join(rng.choice("ac") for _ in range(rng.randint(0, 10)))
        if H.normal_order(w, rng) != H.normal_order(w):
            rep.failure = ("confluence", w)
            return rep
    rep.checks.append(("confluence", 50))
    return rep


def suite_katriel(b: Bounds) -> list[Check]:
    return [run("katriel", f"n<={b.max_n}", lambda: katriel_report(b.max_n, b.seed))]


# golden corpus


GOLDEN_DIR = Path(__file__).parent / "golden" / "v1"


@dataclass
class GoldenCase:
    name: str
    title: str
    argv: list[str]
    expected: str


def load_golden(directory: Path = GOLDEN_DIR) -> list[GoldenCase]:
    import shlex

    cases = []
    for path in sorted(directory.glob("*.txt")):
        title, argv, body = "", None, []
        for line in path.read_text(encoding="utf-8").splitlines():
            if argv is None:
                if line.startswith("#"):
                    title = title or line.lstrip("# ").strip()
                elif line.startswith("$ bdiag "):
                    argv = shlex.split(line[len("$ bdiag "):])
                continue
            body.append(line)
        if argv is None:
            raise ValueError(f"{path.name}: no command line")
        cases.append(GoldenCase(path.stem, title, argv, "\n".join(body).strip()))
    return cases


def split_terms(text: str) -> list[str]:
    """Signed terms of a sum at bracket depth 0, one sum per line, sorted."""
    out = []
    for line in text.strip().splitlines():
        depth, cur, sign = 0, "", "+"
        i = 0
        while i < len(line):
            ch = line[i]
            if ch in "([{":
                depth += 1
            elif ch in ")]}":
                depth -= 1
            if depth == 0 and line[i:i + 3] in (" + ", " - "):
                out.append(sign + cur.strip())
                sign = line[i + 1]
                cur = ""
                i += 3
                continue
            cur += ch
            i += 1
        out.append(sign + cur.strip())
    return sorted("-" + t[2:] if t.startswith("+-") else t for t in out)


def run_golden(case: GoldenCase) -> tuple[bool, str, str]:
    """(matches, actual output, explanation) for one corpus entry."""
    import io

    from .cli import main

    buf = io.StringIO()
    err = io.StringIO()
    code = main(case.argv, stdout=buf, stderr=err)
    actual = buf.getvalue().strip()
    if code != 0:
        return False, actual, f"exit code {code}: {err.getvalue().strip()}"
    ok = split_terms(actual) == split_terms(case.expected)
    if ok:
        return True, actual, ""
    want, got = split_terms(case.expected), split_terms(actual)
    missing = [t for t in want if t not in got]
    extra = [t for t in got if t not in want]
    return False, actual, f"{len(want)} expected terms, {len(got)} computed; missing {missing[:3]} extra {extra[:3]}"


def suite_golden(b: Bounds) -> list[Check]:
    out = []
    for case in load_golden():
        out.append(run("golden-examples", case.name, lambda case=case: run_golden(case)[::2]))
    return out


SUITES = {
    "hopf-axioms": suite_hopf_axioms,
    "duality": suite_duality,
    "phi-psi": suite_phi_psi,
    "embeddings": suite_embeddings,
    "chi": suite_chi,
    "enumeration": suite_enumeration,
    "exp-formula": suite_exp_formula,
    "katriel": suite_katriel,
    "golden-examples": suite_golden,
}


def run_suite(name: str, bounds: Bounds | None = None) -> list[Check]:
    bounds = bounds or Bounds()
    if name == "all":
        return [c for s in SUITES.values() for c in s(bounds)]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](bounds)

