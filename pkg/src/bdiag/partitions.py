"""Set partitions, set partitions into lists and colored set partitions, with
the Hopf algebras indexed by them and the generic dual product on words.

A partition of any of the three kinds is a tuple of blocks in canonical order
(by smallest element, then color).  A set block is a sorted tuple of integers,
a list block a tuple in its own order, a colored block a pair
``(sorted tuple, color)``.  The kind is carried separately by a ``Kind``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import Bialgebra, LinComb


class ColorBounds:
    """The sequence a = (a_1, a_2, ...): colors for a block of size m are 1..a_m."""

    def __init__(self, prefix: Sequence[int], default: int | None = None):
        self.prefix = tuple(prefix)
        self.default = default

    def __call__(self, m: int) -> int:
        if 1 <= m <= len(self.prefix):
            return self.prefix[m - 1]
        if self.default is None:
            raise ValueError(f"no color bound known for blocks of size {m}")
        return self.default

    def __eq__(self, other) -> bool:
        return isinstance(other, ColorBounds) and (self.prefix, self.default) == (other.prefix, other.default)

    def __hash__(self):
        return hash((self.prefix, self.default))

    def __repr__(self) -> str:
        return f"ColorBounds({self.prefix}, default={self.default})"


class Kind:
    name = "set"

    def elems(self, block) -> tuple[int, ...]:
        return block

    def relabel(self, block, f: Mapping[int, int]):
        return tuple(sorted(f[x] for x in block))

    def key(self, block):
        return (min(self.elems(block)), block)

    def canon(self, blocks: Iterable) -> tuple:
        return tuple(sorted(blocks, key=self.key))

    def fmt_block(self, block) -> str:
        return "{" + ",".join(map(str, block)) + "}"

    def fmt(self, p) -> str:
        return "{" + ",".join(self.fmt_block(b) for b in p) + "}"

    def block_from_tree(self, node):
        tag, items = node
        if tag != "set" or not all(isinstance(x, int) for x in items):
            raise ValueError("set partition blocks must look like {1,3}")
        return tuple(sorted(items))


class ListKind(Kind):
    name = "list"

    def relabel(self, block, f):
        return tuple(f[x] for x in block)

    def fmt_block(self, block) -> str:
        return "[" + ",".join(map(str, block)) + "]"

    def block_from_tree(self, node):
        tag, items = node
        if tag != "list" or not all(isinstance(x, int) for x in items):
            raise ValueError("list partition blocks must look like [3,1]")
        if len(set(items)) != len(items):
            raise ValueError("repeated element in a list block")
        return tuple(items)


class ColoredKind(Kind):
    name = "colored"

    def __init__(self, bounds: ColorBounds | None = None):
        self.bounds = bounds

    def elems(self, block):
        return block[0]

    def relabel(self, block, f):
        return (tuple(sorted(f[x] for x in block[0])), block[1])

    def key(self, block):
        return (min(block[0]), block[1], block[0])

    def fmt_block(self, block) -> str:
        return "[{" + ",".join(map(str, block[0])) + "}," + str(block[1]) + "]"

    def block_from_tree(self, node):
        tag, items = node
        if tag != "list" or len(items) != 2 or not isinstance(items[1], int):
            raise ValueError("colored blocks must look like [{1,2},3]")
        inner = items[0]
        if not (isinstance(inner, tuple) and inner[0] == "set"):
            raise ValueError("colored blocks must look like [{1,2},3]")
        return (tuple(sorted(inner[1])), items[1])

    def __eq__(self, other):
        return isinstance(other, ColoredKind) and self.bounds == other.bounds

    def __hash__(self):
        return hash(("colored", self.bounds))


SET = Kind()
LIST = ListKind()


def colored(bounds: ColorBounds | Sequence[int] | None = None, default: int | None = None) -> ColoredKind:
    if bounds is None and default is not None:
        bounds = ColorBounds((), default)
    elif bounds is not None and not isinstance(bounds, ColorBounds):
        bounds = ColorBounds(bounds, default)
    return ColoredKind(bounds)


# parsing


def _tree(text: str):
    pos = 0
    text = text.strip()

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos] in " \t\n":
            pos += 1

    def node():
        nonlocal pos
        skip()
        if pos >= len(text):
            raise ValueError(f"unexpected end of input at position {pos}")
        c = text[pos]
        if c in "{[":
            close = "}" if c == "{" else "]"
            pos += 1
            items = []
            skip()
            if pos < len(text) and text[pos] == close:
                pos += 1
                return ("set" if c == "{" else "list", tuple(items))
            while True:
                items.append(node())
                skip()
                if pos >= len(text):
                    raise ValueError(f"missing {close!r} at position {pos}")
                if text[pos] == ",":
                    pos += 1
                    continue
                if text[pos] == close:
                    pos += 1
                    return ("set" if c == "{" else "list", tuple(items))
                raise ValueError(f"unexpected {text[pos]!r} at position {pos}")
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValueError(f"unexpected {c!r} at position {pos}")
        return int(text[start:pos])

    out = node()
    skip()
    if pos != len(text):
        raise ValueError(f"trailing input at position {pos}")
    return out


def parse_partition(text: str, kind: Kind = SET) -> tuple:
    tree = _tree(text)
    if not (isinstance(tree, tuple) and tree[0] == "set"):
        raise ValueError("a partition is written as a brace-enclosed set of blocks")
    blocks = [kind.block_from_tree(b) for b in tree[1]]
    p = kind.canon(blocks)
    check_partition(p, kind)
    return p


def check_partition(p, kind: Kind = SET) -> None:
    elems = [x for b in p for x in kind.elems(b)]
    if any(len(kind.elems(b)) == 0 for b in p):
        raise ValueError("empty block")
    if sorted(elems) != list(range(1, len(elems) + 1)):
        raise ValueError(f"blocks do not partition 1..{len(elems)}")
    if isinstance(kind, ColoredKind):
        for b in p:
            if b[1] < 1:
                raise ValueError("colors start at 1")
            if kind.bounds is not None and b[1] > kind.bounds(len(b[0])):
                raise ValueError(f"color {b[1]} exceeds bound for block size {len(b[0])}")


def fmt(p, kind: Kind = SET) -> str:
    return kind.fmt(p)


# generic operations


def size(p, kind: Kind = SET) -> int:
    return sum(len(kind.elems(b)) for b in p)


def std(blocks: Iterable, kind: Kind = SET) -> tuple:
    blocks = list(blocks)
    support = sorted(x for b in blocks for x in kind.elems(b))
    f = {x: i for i, x in enumerate(support, start=1)}
    return kind.canon(kind.relabel(b, f) for b in blocks)


def shift(p, k: int, kind: Kind = SET) -> tuple:
    f = _Shift(k)
    return tuple(kind.relabel(b, f) for b in p)


class _Shift:
    def __init__(self, k):
        self.k = k

    def __getitem__(self, x):
        return x + self.k


def shifted_union(p, q, kind: Kind = SET) -> tuple:
    return kind.canon(tuple(p) + shift(q, size(p, kind), kind))


def split_points(p, kind: Kind = SET) -> list[int]:
    n = size(p, kind)
    spans = [(min(kind.elems(b)), max(kind.elems(b))) for b in p]
    return [j for j in range(1, n) if all(hi <= j or lo > j for lo, hi in spans)]


def indivisible(p, kind: Kind = SET) -> bool:
    return len(p) > 0 and not split_points(p, kind)


def factors(p, kind: Kind = SET) -> tuple:
    """The word of indivisible factors of p (the iota map)."""
    n = size(p, kind)
    pts = [0] + split_points(p, kind) + [n]
    out = []
    for lo, hi in zip(pts, pts[1:]):
        out.append(std([b for b in p if lo < min(kind.elems(b)) <= hi], kind))
    return tuple(out) if n else ()


def unfactor(word: Iterable, kind: Kind = SET) -> tuple:
    out: tuple = ()
    for letter in word:
        out = shifted_union(out, letter, kind)
    return out


def phi_product(p, q, kind: Kind = SET) -> LinComb:
    return LinComb.basis(shifted_union(p, q, kind))


def block_splits(p, kind: Kind = SET) -> Iterator[tuple[tuple, tuple]]:
    """(std of chosen blocks, std of the others) for every subset of block positions."""
    k = len(p)
    for mask in itertools.product((1, 0), repeat=k):
        left = [b for b, m in zip(p, mask) if m]
        right = [b for b, m in zip(p, mask) if not m]
        yield std(left, kind), std(right, kind)


def phi_coproduct(p, kind: Kind = SET) -> LinComb:
    return LinComb.from_counts(block_splits(p, kind))


def dual_product(p, q, kind: Kind = SET) -> LinComb:
    """Sum over all ways of placing p and q on complementary supports."""
    n, m = size(p, kind), size(q, kind)
    terms = []
    for S in itertools.combinations(range(1, n + m + 1), n):
        Sset = set(S)
        T = [x for x in range(1, n + m + 1) if x not in Sset]
        fp = dict(zip(range(1, n + 1), S))
        fq = dict(zip(range(1, m + 1), T))
        terms.append(kind.canon([kind.relabel(b, fp) for b in p] + [kind.relabel(b, fq) for b in q]))
    return LinComb.from_counts(terms)


def dual_coproduct(p, kind: Kind = SET) -> LinComb:
    """Deconcatenation along the shifted-union factorizations."""
    n = size(p, kind)
    pts = [0] + split_points(p, kind) + [n] if n else [0]
    terms = []
    for j in pts:
        terms.append((std([b for b in p if max(kind.elems(b)) <= j], kind),
                      std([b for b in p if min(kind.elems(b)) > j], kind)))
    return LinComb.from_counts(terms)


def alpha_coefficient(big, p1, p2, kind: Kind = SET) -> int:
    """Number of ordered splits of the blocks of ``big`` standardizing to (p1, p2)."""
    if size(big, kind) != size(p1, kind) + size(p2, kind) or len(big) != len(p1) + len(p2):
        return 0
    return sum(1 for a, b in block_splits(big, kind) if a == p1 and b == p2)


def psi_product(p1, p2, kind: Kind = SET) -> LinComb:
    """Psi_p1 Psi_p2 = sum over the set-valued shuffle of alpha-weighted terms."""
    support = set(dual_product(p1, p2, kind).terms)
    return LinComb({P: alpha_coefficient(P, p1, p2, kind) for P in support})


def aleph(p) -> tuple:
    """Set partition -> list partition with every block in increasing order."""
    return LIST.canon(tuple(sorted(b)) for b in p)


def bialgebra_phi(kind: Kind = SET) -> Bialgebra:
    return Bialgebra(lambda a, b: phi_product(a, b, kind), lambda a: phi_coproduct(a, kind), (),
                     lambda a: size(a, kind), f"Phi[{kind.name}]")


def bialgebra_dual(kind: Kind = SET) -> Bialgebra:
    return Bialgebra(lambda a, b: dual_product(a, b, kind), lambda a: dual_coproduct(a, kind), (),
                     lambda a: size(a, kind), f"dual[{kind.name}]")


# enumeration


def set_partitions(n: int) -> Iterator[tuple]:
    """All set partitions of 1..n, via restricted growth strings."""
    if n == 0:
        yield ()
        return

    def rec(i, rgs, k):
        if i == n:
            blocks = [[] for _ in range(k)]
            for x, c in enumerate(rgs, start=1):
                blocks[c].append(x)
            yield SET.canon(tuple(b) for b in blocks)
            return
        for c in range(k + 1):
            yield from rec(i + 1, rgs + [c], max(k, c + 1))

    yield from rec(0, [], 0)


def list_partitions(n: int) -> Iterator[tuple]:
    for p in set_partitions(n):
        for perms in itertools.product(*(itertools.permutations(b) for b in p)):
            yield LIST.canon(perms)


def colored_partitions(n: int, kind: ColoredKind) -> Iterator[tuple]:
    for p in set_partitions(n):
        choices = [range(1, kind.bounds(len(b)) + 1) for b in p]
        for cols in itertools.product(*choices):
            yield kind.canon(zip(p, cols))


def partitions_of(kind: Kind, n: int) -> Iterator[tuple]:
    if isinstance(kind, ColoredKind):
        return colored_partitions(n, kind)
    if kind is LIST or isinstance(kind, ListKind):
        return list_partitions(n)
    return set_partitions(n)


# M basis of WSym


def m_product(p, q) -> LinComb:
    """Sum over partial matchings merging blocks of p with blocks of the shifted q."""
    n = size(p)
    qs = [tuple(x + n for x in b) for b in q]
    out = []
    for k in range(min(len(p), len(qs)) + 1):
        for left in itertools.combinations(range(len(p)), k):
            for right in itertools.permutations(range(len(qs)), k):
                merged = dict(zip(left, right))
                blocks = []
                for i, b in enumerate(p):
                    blocks.append(tuple(sorted(b + qs[merged[i]])) if i in merged else b)
                used = set(right)
                blocks += [b for j, b in enumerate(qs) if j not in used]
                out.append(SET.canon(blocks))
    return LinComb.from_counts(out)


def m_coproduct(p) -> LinComb:
    return phi_coproduct(p, SET)


def coarsenings(p) -> Iterator[tuple]:
    for grouping in set_partitions(len(p)):
        yield SET.canon(tuple(sorted(x for i in g for x in p[i - 1])) for g in grouping)


def phi_to_m(p) -> LinComb:
    return LinComb.from_counts(coarsenings(p))


def m_to_phi(x: LinComb) -> LinComb:
    rest = LinComb(x.terms)
    out: dict = {}
    while rest:
        p = max(rest.terms, key=lambda q: (len(q), q))
        c = rest.terms[p]
        out[p] = out.get(p, 0) + c
        rest = rest - phi_to_m(p) * c
    return LinComb(out)


# dual product on words


class DeltaTable:
    """Coproducts of the letters of a free algebra, given as 2-tensors of words.

    Words are tuples of letters and the empty tuple is the unit.  The table is
    transposed once so the dual product can look up, for a pair of prefixes,
    which letters have a nonzero coefficient.
    """

    def __init__(self, table: Mapping):
        self.table = dict(table)
        inv: dict = {}
        for a, d in self.table.items():
            for (w1, w2), c in d.terms.items():
                if w1 == () and w2 == ():
                    raise ValueError(f"coproduct of letter {a!r} has a 1 (x) 1 term: not connected")
                inv.setdefault((w1, w2), {})
                inv[(w1, w2)][a] = inv[(w1, w2)].get(a, 0) + c
        self.inv = inv

    def coproduct(self, w: tuple) -> LinComb:
        """Coproduct of a word, multiplicative over the letters."""
        out = LinComb.basis(((), ()))
        for a in w:
            acc: dict = {}
            for (x1, x2), c in out.terms.items():
                for (y1, y2), d in self.table[a].terms.items():
                    k = (x1 + y1, x2 + y2)
                    acc[k] = acc.get(k, 0) + c * d
            out = LinComb(acc)
        return out


def word_dual_product(u: tuple, v: tuple, table: DeltaTable) -> LinComb:
    """u cup v = sum over prefixes (p1, p2) != (1, 1) and letters a of
    (p1 (x) p2, Delta a) a . (v1 cup v2), with u = p1 v1 and v = p2 v2."""
    memo: dict = {}

    def rec(x, y) -> dict:
        key = (x, y)
        if key in memo:
            return memo[key]
        if not x and not y:
            memo[key] = {(): 1}
            return memo[key]
        acc: dict = {}
        for i in range(len(x) + 1):
            for j in range(len(y) + 1):
                if i == 0 and j == 0:
                    continue
                letters = table.inv.get((x[:i], y[:j]))
                if not letters:
                    continue
                tail = rec(x[i:], y[j:])
                for a, c in letters.items():
                    for w, d in tail.items():
                        k = (a,) + w
                        acc[k] = acc.get(k, 0) + c * d
        memo[key] = {k: c for k, c in acc.items() if c}
        return memo[key]

    return LinComb(rec(tuple(u), tuple(v)))


def shuffle_table(letters: Iterable) -> DeltaTable:
    """Every letter primitive: the dual product is the shuffle product."""
    return DeltaTable({a: LinComb({((a,), ()): 1, ((), (a,)): 1}) for a in letters})


def partition_delta_table(kind: Kind, max_size: int) -> DeltaTable:
    """Letters: indivisible partitions up to ``max_size``; coproduct by block splits."""
    table = {}
    for n in range(1, max_size + 1):
        for p in partitions_of(kind, n):
            if not indivisible(p, kind):
                continue
            table[p] = LinComb.from_counts((factors(a, kind), factors(b, kind)) for a, b in block_splits(p, kind))
    return DeltaTable(table)


@lru_cache(maxsize=None)
def _cached_table(kind: Kind, max_size: int) -> DeltaTable:
    return partition_delta_table(kind, max_size)


def dual_product_via_words(p, q, kind: Kind = SET, table: DeltaTable | None = None) -> LinComb:
    """The dual product of partitions computed by the word engine on their factor words."""
    if table is None:
        table = _cached_table(kind, size(p, kind) + size(q, kind))
    w = word_dual_product(factors(p, kind), factors(q, kind), table)
    return w.map(lambda word: unfactor(word, kind))


def format_word(w: tuple, kind: Kind = SET) -> str:
    if not w:
        return "1"
    return "".join("a" + kind.fmt(letter) for letter in w)
