"""Exact linear combinations, tensors, pairings and generic bialgebra checks."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping

Scalar = int | Fraction


def _norm(c) -> Scalar:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"coefficient {c!r} is not exact")


class LinComb:
    """Finite formal sum over hashable, mutually comparable basis elements.

    Coefficients are ``int`` or ``Fraction``; zero terms are never stored.
    Tensor elements are linear combinations whose basis elements are tuples.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        d: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for b, c in items:
                c = _norm(c)
                if c:
                    d[b] = d.get(b, 0) + c
                    if not d[b]:
                        del d[b]
        self.terms = d

    @classmethod
    def basis(cls, b) -> "LinComb":
        return cls({b: 1})

    @classmethod
    def from_counts(cls, elems: Iterable) -> "LinComb":
        d: dict = {}
        for b in elems:
            d[b] = d.get(b, 0) + 1
        return cls(d)

    def __iter__(self) -> Iterator:
        return iter(sorted(self.terms))

    def items(self) -> list[tuple[Hashable, Scalar]]:
        return [(b, self.terms[b]) for b in sorted(self.terms)]

    def support(self) -> list:
        return sorted(self.terms)

    def coeff(self, b) -> Scalar:
        return self.terms.get(b, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LinComb") -> "LinComb":
        d = dict(self.terms)
        for b, c in other.terms.items():
            v = d.get(b, 0) + c
            if v:
                d[b] = v
            else:
                d.pop(b, None)
        out = LinComb()
        out.terms = d
        return out

    def __neg__(self) -> "LinComb":
        out = LinComb()
        out.terms = {b: -c for b, c in self.terms.items()}
        return out

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __mul__(self, k) -> "LinComb":
        k = _norm(k)
        out = LinComb()
        if k:
            out.terms = {b: _norm(c * k) for b, c in self.terms.items()}
        return out

    __rmul__ = __mul__

    def map(self, f: Callable) -> "LinComb":
        """Linear extension of a basis map returning a basis element or LinComb."""
        acc: dict = {}
        for b, c in self.terms.items():
            img = f(b)
            if isinstance(img, LinComb):
                for b2, c2 in img.terms.items():
                    acc[b2] = acc.get(b2, 0) + c * c2
            else:
                acc[img] = acc.get(img, 0) + c
        return LinComb(acc)

    def __repr__(self) -> str:
        return format_lincomb(self)


def format_lincomb(x: LinComb, fmt: Callable = str, zero: str = "0") -> str:
    if not x:
        return zero
    parts = []
    for b, c in x.items():
        s = fmt(b)
        if c == 1:
            parts.append(("+", s))
        elif c == -1:
            parts.append(("-", s))
        elif c > 0:
            parts.append(("+", f"{c}*{s}"))
        else:
            parts.append(("-", f"{-c}*{s}"))
    text = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, s in parts[1:]:
        text += f" {sign} {s}"
    return text


def coeff_text(c: Scalar) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def bilinear(x: LinComb, y: LinComb, f: Callable[[object, object], LinComb]) -> LinComb:
    """Bilinear extension of a basis-level operation."""
    acc: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            for t, ct in f(a, b).terms.items():
                acc[t] = acc.get(t, 0) + ca * cb * ct
    return LinComb(acc)


def tensor(x: LinComb, y: LinComb) -> LinComb:
    return LinComb({(a, b): ca * cb for a, ca in x.terms.items() for b, cb in y.terms.items()})


def pairing(u: LinComb, v: LinComb) -> Scalar:
    """Sum of products of matching coefficients (orthonormal basis pairing)."""
    small, big = (u, v) if len(u) <= len(v) else (v, u)
    return _norm(sum((c * big.terms.get(b, 0) for b, c in small.terms.items()), 0))


def tensor_product_map(t: LinComb, f: Callable, g: Callable) -> LinComb:
    """Apply f to the left and g to the right factor of a 2-tensor."""
    acc: dict = {}
    for (a, b), c in t.terms.items():
        fa, gb = f(a), g(b)
        fa = fa if isinstance(fa, LinComb) else LinComb.basis(fa)
        gb = gb if isinstance(gb, LinComb) else LinComb.basis(gb)
        for x, cx in fa.terms.items():
            for y, cy in gb.terms.items():
                acc[(x, y)] = acc.get((x, y), 0) + c * cx * cy
    return LinComb(acc)


# generic law checks


class Bialgebra:
    """Basis-level description of a graded bialgebra.

    ``mul(a, b)`` and ``comul(a)`` return LinComb values, the latter over pairs.
    """

    def __init__(self, mul, comul, unit, grade, name: str = ""):
        self.mul = mul
        self.comul = comul
        self.unit = unit
        self.grade = grade
        self.name = name

    def counit(self, a) -> int:
        return 1 if a == self.unit else 0

    def product(self, x: LinComb, y: LinComb) -> LinComb:
        return bilinear(x, y, self.mul)

    def coproduct(self, x: LinComb) -> LinComb:
        acc = LinComb()
        for b, c in x.terms.items():
            acc = acc + self.comul(b) * c
        return acc

    def tensor_product(self, s: LinComb, t: LinComb) -> LinComb:
        """Componentwise product on 2-tensors."""
        acc: dict = {}
        for (a1, a2), c in s.terms.items():
            for (b1, b2), d in t.terms.items():
                left = self.mul(a1, b1)
                right = self.mul(a2, b2)
                for x, cx in left.terms.items():
                    for y, cy in right.terms.items():
                        acc[(x, y)] = acc.get((x, y), 0) + c * d * cx * cy
        return LinComb(acc)


class CheckReport:
    def __init__(self):
        self.checks: list[tuple[str, int]] = []
        self.failure: tuple[str, object] | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        if self.ok:
            return "ok(" + ", ".join(f"{n}:{k}" for n, k in self.checks) + ")"
        return f"FAIL {self.failure[0]}: {self.failure[1]!r}"


def _coassoc_left(B: Bialgebra, a) -> LinComb:
    acc: dict = {}
    for (x, y), c in B.comul(a).terms.items():
        for (x1, x2), d in B.comul(x).terms.items():
            k = (x1, x2, y)
            acc[k] = acc.get(k, 0) + c * d
    return LinComb(acc)


def _coassoc_right(B: Bialgebra, a) -> LinComb:
    acc: dict = {}
    for (x, y), c in B.comul(a).terms.items():
        for (y1, y2), d in B.comul(y).terms.items():
            k = (x, y1, y2)
            acc[k] = acc.get(k, 0) + c * d
    return LinComb(acc)


def check_bialgebra(B: Bialgebra, sample: Iterable, max_grade: int | None = None,
                    antipode_check: bool = True) -> CheckReport:
    """Check the bialgebra laws on the given basis elements.

    Products are tested on pairs and triples drawn from ``sample`` whose total
    grade is at most ``max_grade`` (all of them when it is None).
    """
    sample = list(sample)
    rep = CheckReport()
    grade = B.grade

    grades = {a: grade(a) for a in sample}
    by_grade: dict[int, list] = {}
    for a in sample:
        by_grade.setdefault(grades[a], []).append(a)

    def tuples(k: int):
        """k-tuples from the sample with total grade <= max_grade."""
        if max_grade is None:
            yield from itertools.product(sample, repeat=k)
            return

        def rec(prefix, budget):
            if len(prefix) == k:
                yield tuple(prefix)
                return
            for g in sorted(by_grade):
                if g > budget:
                    break
                for a in by_grade[g]:
                    yield from rec(prefix + [a], budget - g)

        yield from rec([], max_grade)

    one = LinComb.basis(B.unit)
    n = 0
    for a in sample:
        x = LinComb.basis(a)
        if B.product(one, x) != x or B.product(x, one) != x:
            rep.failure = ("unit", a)
            return rep
        n += 1
    rep.checks.append(("unit", n))

    n = 0
    for a, b, c in tuples(3):
        xa, xb, xc = LinComb.basis(a), LinComb.basis(b), LinComb.basis(c)
        if B.product(B.product(xa, xb), xc) != B.product(xa, B.product(xb, xc)):
            rep.failure = ("associativity", (a, b, c))
            return rep
        n += 1
    rep.checks.append(("associativity", n))

    n = 0
    for a in sample:
        if _coassoc_left(B, a) != _coassoc_right(B, a):
            rep.failure = ("coassociativity", a)
            return rep
        d = B.comul(a)
        left = LinComb({x: c for (x, y), c in d.terms.items() if y == B.unit})
        right = LinComb({y: c for (x, y), c in d.terms.items() if x == B.unit})
        if left != LinComb.basis(a) or right != LinComb.basis(a):
            rep.failure = ("counit", a)
            return rep
        n += 1
    rep.checks.append(("coassociativity+counit", n))

    n = 0
    for a, b in tuples(2):
        lhs = B.coproduct(B.mul(a, b))
        rhs = B.tensor_product(B.comul(a), B.comul(b))
        if lhs != rhs:
            rep.failure = ("compatibility", (a, b))
            return rep
        n += 1
    rep.checks.append(("compatibility", n))

    if antipode_check:
        S = Antipode(B)
        n = 0
        for a in sample:
            d = B.comul(a)
            target = one * B.counit(a)
            left = LinComb()
            right = LinComb()
            for (x, y), c in d.terms.items():
                left = left + B.product(S(x), LinComb.basis(y)) * c
                right = right + B.product(LinComb.basis(x), S(y)) * c
            if left != target or right != target:
                rep.failure = ("antipode", a)
                return rep
            n += 1
        rep.checks.append(("antipode", n))
    return rep


class Antipode:
    """Antipode of a graded connected bialgebra by the standard recursion.

    ``S(u) = -sum S(u1) u2`` over the terms of ``comul(u)`` other than ``u (x) 1``.
    Values are memoized per basis element for the lifetime of the object.
    """

    def __init__(self, B: Bialgebra):
        self.B = B
        self.memo: dict = {}

    def basis(self, a) -> LinComb:
        if a in self.memo:
            return self.memo[a]
        B = self.B
        if B.grade(a) == 0:
            if a != B.unit:
                raise ValueError("grade 0 is not spanned by the unit: not connected")
            val = LinComb.basis(a)
        else:
            val = LinComb()
            for (x, y), c in B.comul(a).terms.items():
                if x == a and y == B.unit:
                    continue
                val = val - B.product(self.basis(x), LinComb.basis(y)) * c
        self.memo[a] = val
        return val

    def __call__(self, x) -> LinComb:
        if not isinstance(x, LinComb):
            return self.basis(x)
        acc = LinComb()
        for b, c in x.terms.items():
            acc = acc + self.basis(b) * c
        return acc


def antipode(x: LinComb, B: Bialgebra) -> LinComb:
    return Antipode(B)(x)
