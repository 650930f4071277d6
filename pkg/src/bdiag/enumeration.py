"""Exhaustive generation of diagrams built from a set of one-vertex generators,
the counting recurrences, and the exponential-formula checks."""

from __future__ import annotations

import itertools
import json
import os
import re
from collections import Counter
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

from .diagram import BLANK, EPSILON, Diagram, connected_components, diagram_from_json, make, parse_diagram
from .hopf import star_terms
from .linalg import CheckReport
from .series import SeriesQ, exp_z, solve_ode

DEFAULT_WEIGHT_CAP = 8
DEFAULT_SIZE_CAP = 7


class CapExceeded(RuntimeError):
    def __init__(self, msg: str, partial: int):
        super().__init__(f"{msg} (generated {partial} diagrams before stopping)")
        self.partial = partial


def caps() -> tuple[int, int]:
    """(weight cap, size cap); BDIAG_CAP="W" or "W,N" overrides the defaults."""
    env = os.environ.get("BDIAG_CAP")
    if not env:
        return DEFAULT_WEIGHT_CAP, DEFAULT_SIZE_CAP
    parts = [int(x) for x in env.split(",")]
    return parts[0], parts[1] if len(parts) > 1 else parts[0]


@contextmanager
def cap_scope(weight: int, size: int):
    """Raise the caps to at least (weight, size) inside the block."""
    old = os.environ.get("BDIAG_CAP")
    w, n = caps()
    os.environ["BDIAG_CAP"] = f"{max(w, weight)},{max(n, size)}"
    try:
        yield
    finally:
        if old is None:
            del os.environ["BDIAG_CAP"]
        else:
            os.environ["BDIAG_CAP"] = old


# generator sets


def elementary(m: int, f_up: Iterable[int], f_down: Iterable[int]) -> Diagram:
    return make(1, [m], [BLANK] * m, sorted(f_up), sorted(f_down))


def tree_vertex(m: int) -> Diagram:
    return elementary(m, range(1, m + 1), [1])


PRESETS: dict[str, tuple[Diagram, ...]] = {
    "W": (elementary(1, [1], [1]),),
    "BW": (elementary(2, [1, 2], [1]),),
    "F": (elementary(1, [], [1]), elementary(2, [], [1, 2])),
    "S": (elementary(1, [], [1]), elementary(1, [1], [])),
    "FREE12": (elementary(1, [1], [1]), elementary(2, [1, 2], [1, 2])),
}


def tree_generators(E: Iterable[int]) -> tuple[Diagram, ...]:
    return tuple(tree_vertex(m) for m in sorted(set(E)))


def all_elementary(max_arity: int) -> tuple[Diagram, ...]:
    """Every one-vertex diagram of arity at most ``max_arity``."""
    out = []
    for m in range(1, max_arity + 1):
        subsets = [s for k in range(m + 1) for s in itertools.combinations(range(1, m + 1), k)]
        for fu in subsets:
            for fd in subsets:
                out.append(elementary(m, fu, fd))
    return tuple(out)


def resolve_generators(spec: str) -> tuple[Diagram, ...]:
    """Preset name, ``T:{m,...}``, or a path to a JSON array / text file of diagrams."""
    if spec in PRESETS:
        return PRESETS[spec]
    m = re.fullmatch(r"T:\{?([\d,\s]+)\}?", spec)
    if m:
        return tree_generators(int(x) for x in m.group(1).split(",") if x.strip())
    if os.path.exists(spec):
        with open(spec) as fh:
            text = fh.read()
        if text.lstrip().startswith("["):
            gens = tuple(diagram_from_json(o) for o in json.loads(text))
        else:
            gens = tuple(parse_diagram(line) for line in text.splitlines() if line.strip())
        for g in gens:
            if g.n != 1:
                raise ValueError(f"generator {g} does not have exactly one vertex")
        return gens
    raise ValueError(f"unknown generator set {spec!r}")


def vertex_type(g: Diagram, v: int) -> Diagram:
    """The generator a vertex was built from: edges turned back into free half-edges."""
    off = sum(g.lam[: v - 1])
    m = g.lam[v - 1]
    loc = range(off + 1, off + m + 1)
    ups = set(g.f_up) | set(g.e_up)
    downs = set(g.f_down) | set(g.e_down)
    return elementary(m, [h - off for h in loc if h in ups], [h - off for h in loc if h in downs])


def uses_only(g: Diagram, dd: Iterable[Diagram]) -> bool:
    s = set(dd)
    return all(vertex_type(g, v) in s for v in range(1, g.n + 1))


# generation


def generate(dd: Sequence[Diagram], max_weight: int | None = None, max_size: int | None = None,
             cap: int = 5_000_000) -> Iterator[Diagram]:
    """Every diagram of B_D within the bounds, each exactly once, grouped by size.

    Each new diagram is obtained by placing a generator on top of a smaller one
    and connecting some of its free inner half-edges to free outer ones below.
    """
    if max_weight is None and max_size is None:
        raise ValueError("a weight or size bound is required")
    wcap, ncap = caps()
    if max_weight is not None and max_weight > wcap:
        raise CapExceeded(f"weight bound {max_weight} above cap {wcap}", 0)
    if max_size is not None and max_size > ncap:
        raise CapExceeded(f"size bound {max_size} above cap {ncap}", 0)
    dd = sorted(set(dd))
    level = [EPSILON]
    count = 0
    seen_total = 0
    n = 0
    while level:
        seen: set[bytes] = set()
        for g in level:
            seen.add(g.key)
            count += 1
            if count > cap:
                raise CapExceeded(f"more than {cap} diagrams", count - 1)
            yield g
        if len(seen) != len(level):
            raise AssertionError("generation produced a duplicate diagram")
        seen_total += len(level)
        n += 1
        if max_size is not None and n > max_size:
            break
        nxt = []
        for g in level:
            for v in dd:
                if max_weight is not None and g.omega + v.omega > max_weight:
                    continue
                nxt.extend(star_terms(g, v))
        level = nxt


def by_weight(dd: Sequence[Diagram], max_weight: int) -> dict[int, list[Diagram]]:
    out: dict[int, list[Diagram]] = {w: [] for w in range(max_weight + 1)}
    for g in generate(dd, max_weight=max_weight):
        out[g.omega].append(g)
    for w in out:
        out[w].sort()
    return out


def by_size(dd: Sequence[Diagram], max_size: int) -> dict[int, list[Diagram]]:
    out: dict[int, list[Diagram]] = {n: [] for n in range(max_size + 1)}
    for g in generate(dd, max_size=max_size):
        out[g.n].append(g)
    for n in out:
        out[n].sort()
    return out


def full_alphabet_by_weight(max_weight: int) -> dict[int, list[Diagram]]:
    return by_weight(all_elementary(max_weight), max_weight)


# counting recurrences


def _gen_stats(dd: Iterable[Diagram]) -> tuple[tuple[int, int, int, int], ...]:
    """(weight, f_up, f_down, multiplicity) for the distinct generator shapes."""
    cnt = Counter((g.omega, len(g.f_up), len(g.f_down)) for g in set(dd))
    return tuple(sorted(k + (m,) for k, m in cnt.items()))


def count_kappa(dd: Sequence[Diagram], n: int, p: int) -> int:
    """Number of diagrams of B_D with n vertices and p free outer half-edges."""
    return _kappa(_gen_stats(dd), n, p)


@lru_cache(maxsize=None)
def _kappa(stats, n: int, p: int) -> int:
    if n < 0 or p < 0:
        return 0
    if n == 0:
        return 1 if p == 0 else 0
    total = 0
    for _, fu, fd, mult in stats:
        for j in range(fd + 1):
            q = p - fu + j
            if q < 0:
                continue
            total += mult * factorial(j) * comb(fd, j) * comb(q, j) * _kappa(stats, n - 1, q)
    return total


def count_d(dd: Sequence[Diagram], n: int, p: int) -> int:
    """Number of diagrams of B_D with weight n and p free outer half-edges."""
    return _d(_gen_stats(dd), n, p)


@lru_cache(maxsize=None)
def _d(stats, n: int, p: int) -> int:
    if n < 0 or p < 0:
        return 0
    if n == 0:
        return 1 if p == 0 else 0
    total = 0
    for w, fu, fd, mult in stats:
        for j in range(fd + 1):
            q = p - fu + j
            if q < 0:
                continue
            total += mult * factorial(j) * comb(fd, j) * comb(q, j) * _d(stats, n - w, q)
    return total


@lru_cache(maxsize=None)
def enumdiag(p: int, q: int) -> int:
    """Diagrams over the full alphabet with weight p and q free outer half-edges."""
    if p < 0 or q < 0:
        return 0
    if p == 0:
        return 1 if q == 0 else 0
    total = 0
    for i in range(1, p + 1):
        for j in range(i + 1):
            for k in range(i + 1):
                for l in range(j + 1):
                    r = q - k + l
                    if r < 0:
                        continue
                    total += (factorial(l) * comb(j, l) * comb(r, l) * comb(i, j) * comb(i, k)
                              * enumdiag(p - i, r))
    return total


def beta(dd: Sequence[Diagram], n: int) -> int:
    m = max((len(g.f_up) for g in dd), default=0)
    return sum(count_kappa(dd, n, p) for p in range(m * n + 1))


def alpha(dd: Sequence[Diagram], n: int) -> int:
    return sum(count_d(dd, n, k) for k in range(n + 1))


# brute-force statistics


def brute_counts(dd: Sequence[Diagram], limit: int, by: str = "size") -> dict[str, list]:
    """beta, c (by size) or alpha (by weight) from explicit generation."""
    if by == "size":
        levels = by_size(dd, limit)
        return {
            "beta": [len(levels[n]) for n in range(limit + 1)],
            "c": [sum(1 for g in levels[n] if len(connected_components(g)) == 1) for n in range(limit + 1)],
            "kappa": [[sum(1 for g in levels[n] if len(g.f_up) == p) for p in range(_max_up(levels[n]) + 1)]
                      for n in range(limit + 1)],
        }
    levels = by_weight(dd, limit)
    return {
        "alpha": [len(levels[w]) for w in range(limit + 1)],
        "d": [[sum(1 for g in levels[w] if len(g.f_up) == p) for p in range(w + 1)] for w in range(limit + 1)],
    }


def _max_up(gs: list[Diagram]) -> int:
    return max((len(g.f_up) for g in gs), default=0)


def sequences(dd: Sequence[Diagram], limit: int, brute: bool = True) -> dict[str, list[int]]:
    """beta and alpha from the recurrences, c and the brute-force values when asked."""
    out = {
        "beta": [beta(dd, n) for n in range(limit + 1)],
        "alpha": [alpha(dd, n) for n in range(limit + 1)],
    }
    if brute:
        bs = brute_counts(dd, limit, "size")
        bw = brute_counts(dd, limit, "weight")
        out["c"] = bs["c"]
        out["beta_brute"] = bs["beta"]
        out["alpha_brute"] = bw["alpha"]
    return out


def connected_counts(dd: Sequence[Diagram], limit: int) -> list[int]:
    return brute_counts(dd, limit, "size")["c"]


# exponential formula


def verify_exp_formula(dd: Sequence[Diagram], order: int) -> CheckReport:
    """sum beta_n z^n/n! = exp(sum_{n>=1} c_n z^n/n!) from enumerated counts."""
    rep = CheckReport()
    counts = brute_counts(dd, order, "size")
    c = counts["c"]
    c[0] = 0
    lhs = SeriesQ.from_egf(counts["beta"], order)
    rhs = SeriesQ.from_egf(c, order).exp()
    if lhs != rhs:
        rep.failure = ("exp-formula", (lhs.egf_values(), rhs.egf_values()))
    rep.checks.append(("exp-formula", order))
    return rep


# forests of increasing trees


def forest_ode(E: Iterable[int], order: int) -> SeriesQ:
    """Solution of f' = sum_{m in E} f^m with f(0) = 1."""
    E = sorted(set(E))

    def rhs(f: SeriesQ) -> SeriesQ:
        acc = SeriesQ([0], f.order)
        for m in E:
            p = SeriesQ([1], f.order)
            for _ in range(m):
                p = p * f
            acc = acc + p
        return acc

    return solve_ode(rhs, 1, order)


def forest_closed_form(E: Iterable[int], order: int) -> SeriesQ:
    """Closed forms for E = {m} and E = {1, m}."""
    E = sorted(set(E))
    if len(E) == 1:
        m = E[0]
        if m == 1:
            return exp_z(1, order)
        base = SeriesQ([1, -(m - 1)], order)
        return base.pow(Fraction(1, 1 - m))
    if len(E) == 2 and E[0] == 1:
        m = E[1]
        inner = exp_z(1 - m, order) * 2 - 1
        return inner.pow(Fraction(1, 1 - m))
    raise ValueError("no closed form known for this set")


def tree_count_product(m: int, n: int) -> int:
    """Number of increasing m-ary trees on n vertices."""
    out = 1
    for k in range(2, n + 1):
        out *= (k - 1) * (m - 1) + 1
    return out


def forest_series(E: Iterable[int], order: int, brute_order: int | None = None):
    """Return (f_E, report) comparing the ODE with closed forms and enumeration."""
    E = sorted(set(E))
    f = forest_ode(E, order)
    rep = CheckReport()
    try:
        closed = forest_closed_form(E, order)
    except ValueError:
        closed = None
    if closed is not None:
        if closed != f:
            rep.failure = ("closed-form", (f, closed))
            return f, rep
        rep.checks.append(("closed-form", order))
    bo = order if brute_order is None else brute_order
    gens = tree_generators(E)
    c = connected_counts(gens, bo)
    vals = f.egf_values()
    if any(c[n] != vals[n] for n in range(1, bo + 1)):
        rep.failure = ("tree-count", (c, vals[: bo + 1]))
        return f, rep
    rep.checks.append(("tree-count", bo))
    if len(E) == 1:
        m = E[0]
        for n in range(bo * m + 1):
            for k in range(n + 1):
                want = count_kappa(gens, n // m, k) if n % m == 0 else 0
                if count_d(gens, n, k) != want:
                    rep.failure = ("d-kappa", (n, k))
                    return f, rep
        rep.checks.append(("d-kappa", bo))
    return f, rep
