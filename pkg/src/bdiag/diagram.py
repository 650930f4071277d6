"""B-diagrams and F-diagrams: representation, validation and structural operations.

A diagram is stored as ``(n, lam, phi, f_up, f_down)``.  Half-edges are
numbered ``1..omega`` vertex by vertex.  ``phi`` is a dense tuple of length
omega whose entry ``phi[a-1]`` is the target of the edge leaving outer
half-edge ``a``, or ``BLANK`` when ``a`` carries no edge.  Cut half-edges are
never stored; they are whatever is neither used by an edge nor free.
"""

from __future__ import annotations

import itertools
import re
import struct
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

BLANK = 0


def block_num(lam: Sequence[int], k: int) -> tuple[int, int]:
    """Return ``(vertex, local index)`` of the global half-edge ``k``."""
    if k < 1:
        raise IndexError(f"half-edge {k} out of range")
    for v, size in enumerate(lam, start=1):
        if k <= size:
            return v, k
        k -= size
    raise IndexError("half-edge out of range")


def _offsets(lam: Sequence[int]) -> list[int]:
    out = [0]
    for x in lam:
        out.append(out[-1] + x)
    return out


@dataclass(frozen=True, eq=True)
class Diagram:
    n: int
    lam: tuple[int, ...]
    phi: tuple[int, ...]
    f_up: tuple[int, ...]
    f_down: tuple[int, ...]

    # derived data

    @cached_property
    def omega(self) -> int:
        return sum(self.lam)

    @cached_property
    def blocks(self) -> tuple[int, ...]:
        """``blocks[a-1]`` is the vertex carrying half-edge ``a``."""
        return tuple(v for v, size in enumerate(self.lam, start=1) for _ in range(size))

    @cached_property
    def e_up(self) -> tuple[int, ...]:
        return tuple(a for a, t in enumerate(self.phi, start=1) if t != BLANK)

    @cached_property
    def e_down(self) -> tuple[int, ...]:
        return tuple(sorted(t for t in self.phi if t != BLANK))

    @property
    def edges(self) -> Iterator[tuple[int, int]]:
        return ((a, t) for a, t in enumerate(self.phi, start=1) if t != BLANK)

    @cached_property
    def cut_up(self) -> tuple[int, ...]:
        used = set(self.e_up) | set(self.f_up)
        return tuple(a for a in range(1, self.omega + 1) if a not in used)

    @cached_property
    def cut_down(self) -> tuple[int, ...]:
        used = set(self.e_down) | set(self.f_down)
        return tuple(a for a in range(1, self.omega + 1) if a not in used)

    @property
    def tau(self) -> int:
        return len(self.e_up)

    def stats(self) -> dict[str, int]:
        return {
            "size": self.n,
            "omega": self.omega,
            "tau": self.tau,
            "f_up": len(self.f_up),
            "f_down": len(self.f_down),
            "c_up": len(self.cut_up),
            "c_down": len(self.cut_down),
        }

    @cached_property
    def key(self) -> bytes:
        return canonical_key(self)

    def __lt__(self, other: "Diagram") -> bool:
        return self.key < other.key

    def __le__(self, other: "Diagram") -> bool:
        return self.key <= other.key

    def __gt__(self, other: "Diagram") -> bool:
        return self.key > other.key

    def __ge__(self, other: "Diagram") -> bool:
        return self.key >= other.key

    def is_b(self) -> bool:
        blk = self.blocks
        return all(blk[a - 1] < blk[t - 1] for a, t in self.edges)

    def __str__(self) -> str:
        return format_diagram(self)

    def __repr__(self) -> str:
        return format_diagram(self)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lambda": list(self.lam),
            "phi": [None if t == BLANK else t for t in self.phi],
            "f_up": list(self.f_up),
            "f_down": list(self.f_down),
        }


EPSILON = Diagram(0, (), (), (), ())


def canonical_key(g: Diagram) -> bytes:
    """Length-prefixed big-endian encoding of the five fields."""
    parts = [(g.n,), g.lam, g.phi, g.f_up, g.f_down]
    out = bytearray()
    for p in parts:
        out += struct.pack(">I", len(p))
        for x in p:
            out += struct.pack(">I", x)
    return bytes(out)


def from_key(key: bytes) -> Diagram:
    vals = []
    pos = 0
    for _ in range(5):
        (length,) = struct.unpack_from(">I", key, pos)
        pos += 4
        vals.append(struct.unpack_from(f">{length}I", key, pos))
        pos += 4 * length
    if pos != len(key):
        raise ValueError("trailing bytes in diagram key")
    return Diagram(vals[0][0], *vals[1:])


# validation


class Report(NamedTuple):
    kind: str  # "B", "F" or "invalid"
    diagram: Diagram | None
    reason: str | None


def validate(n, lam, phi, f_up, f_down) -> Report:
    """Classify a raw 5-tuple; the first violated invariant is reported."""
    lam = tuple(int(x) for x in lam)
    phi = tuple(BLANK if t is None else int(t) for t in phi)
    f_up = tuple(int(x) for x in f_up)
    f_down = tuple(int(x) for x in f_down)
    omega = sum(lam)
    if n != len(lam):
        return Report("invalid", None, f"length: n={n} but lambda has {len(lam)} entries")
    if any(x < 1 for x in lam):
        return Report("invalid", None, "length: lambda entries must be positive")
    if len(phi) != omega:
        return Report("invalid", None, f"length: phi has {len(phi)} entries, expected {omega}")
    if any(not (t == BLANK or 1 <= t <= omega) for t in phi):
        return Report("invalid", None, "length: phi entry out of range")
    targets = [t for t in phi if t != BLANK]
    if len(set(targets)) != len(targets):
        return Report("invalid", None, "injectivity: phi is not injective")
    offs = _offsets(lam)
    blk = [v for v in range(1, n + 1) for _ in range(offs[v] - offs[v - 1])]
    reversed_edge = False
    for a, t in enumerate(phi, start=1):
        if t == BLANK:
            continue
        if blk[a - 1] == blk[t - 1]:
            return Report("invalid", None, f"edge direction: loop at half-edge {a}")
        if blk[a - 1] > blk[t - 1]:
            reversed_edge = True
    for name, s in (("F_up", f_up), ("F_down", f_down)):
        if list(s) != sorted(set(s)):
            return Report("invalid", None, f"disjointness: {name} must be a strictly increasing set")
        if any(not 1 <= x <= omega for x in s):
            return Report("invalid", None, f"disjointness: {name} entry out of range")
    e_up = {a for a, t in enumerate(phi, start=1) if t != BLANK}
    if e_up & set(f_up):
        return Report("invalid", None, "disjointness: F_up meets E_up")
    if set(targets) & set(f_down):
        return Report("invalid", None, "disjointness: F_down meets E_down")
    g = Diagram(n, lam, phi, f_up, f_down)
    return Report("F" if reversed_edge else "B", g, None)


def make(n, lam, phi, f_up=(), f_down=(), allow_f: bool = False) -> Diagram:
    """Build a validated diagram; ``phi`` may be a word such as ``"7486____"``."""
    if isinstance(phi, str):
        phi = parse_phi_word(phi)
    rep = validate(n, lam, phi, sorted(f_up), sorted(f_down))
    if rep.kind == "invalid" or (rep.kind == "F" and not allow_f):
        raise ValueError(rep.reason or "not a B-diagram (edge goes downward)")
    return rep.diagram


# text and JSON formats

_BLANKS = "_⊔"


def parse_phi_word(word: str) -> tuple[int, ...]:
    word = word.strip()
    if not word:
        return ()
    if any(c in word for c in ", "):
        toks = [t for t in re.split(r"[,\s]+", word) if t]
    else:
        toks = list(word)
    return tuple(BLANK if t in _BLANKS else int(t) for t in toks)


def format_phi_word(phi: Sequence[int]) -> str:
    if all(t <= 9 for t in phi):
        return "".join("_" if t == BLANK else str(t) for t in phi)
    return ",".join("_" if t == BLANK else str(t) for t in phi)


def _fmt_set(s: Iterable[int]) -> str:
    return "{" + ",".join(map(str, s)) + "}"


def format_diagram(g: Diagram) -> str:
    return (
        f"B({g.n}; {','.join(map(str, g.lam))}; {format_phi_word(g.phi)}; "
        f"{_fmt_set(g.f_up)}; {_fmt_set(g.f_down)})"
    )


def format_diagram_tuple(g: Diagram) -> str:
    """``(n,[l1,...],phi-word,{F_up},{F_down})`` with ⊔ for blanks and ∅ for empty sets."""
    if any(t > 9 for t in g.phi):
        return format_diagram(g)
    word = "".join("⊔" if t == BLANK else str(t) for t in g.phi)

    def st(s):
        return _fmt_set(s) if s else "∅"

    return f"({g.n},[{','.join(map(str, g.lam))}],{word},{st(g.f_up)},{st(g.f_down)})"


_TEXT_RE = re.compile(r"^\s*B\((.*)\)\s*$", re.S)


def _parse_set(s: str) -> tuple[int, ...]:
    s = s.strip()
    if s in ("", "{}", "∅"):
        return ()
    if not (s.startswith("{") and s.endswith("}")):
        raise ValueError(f"expected a set in braces, got {s!r}")
    return tuple(int(x) for x in s[1:-1].split(",") if x.strip())


_TUPLE_RE = re.compile(
    r"^\s*\(\s*(\d+)\s*,\s*\[([^\]]*)\]\s*,\s*([^,{}]*?)\s*,\s*(\{[^}]*\}|∅)\s*,\s*(\{[^}]*\}|∅)\s*\)\s*$")


def parse_diagram(text: str, allow_f: bool = False) -> Diagram:
    """Parse ``B(n; l1,...,ln; phi-word; {F_up}; {F_down})``.

    The tuple form ``(n,[l1,...],phi-word,{F_up},{F_down})`` is accepted too.
    """
    t = _TUPLE_RE.match(text)
    if t:
        lam = tuple(int(x) for x in t.group(2).split(",") if x.strip())
        word = "" if t.group(3) in ("", "∅") else t.group(3)
        return make(int(t.group(1)), lam, parse_phi_word(word), _parse_set(t.group(4)),
                    _parse_set(t.group(5)), allow_f)
    m = _TEXT_RE.match(text)
    if not m:
        raise ValueError(f"not a diagram literal: {text!r}")
    fields = m.group(1).split(";")
    if len(fields) != 5:
        raise ValueError(f"expected 5 fields separated by ';', got {len(fields)}")
    n = int(fields[0])
    lam = tuple(int(x) for x in fields[1].split(",") if x.strip())
    return make(n, lam, parse_phi_word(fields[2]), _parse_set(fields[3]), _parse_set(fields[4]), allow_f)


def diagram_from_json(obj: dict, allow_f: bool = False) -> Diagram:
    return make(obj["n"], obj["lambda"], [BLANK if t is None else t for t in obj["phi"]],
                obj["f_up"], obj["f_down"], allow_f)


# structural operations


def _check_seq(g: Diagram, seq: Sequence[int]) -> None:
    if any(not 1 <= v <= g.n for v in seq) or any(x >= y for x, y in zip(seq, seq[1:])):
        raise ValueError(f"invalid vertex sequence {list(seq)} for a diagram of size {g.n}")


def _restrict(g: Diagram, seq: Sequence[int], restore: bool) -> Diagram:
    offs = _offsets(g.lam)
    old = [h for v in seq for h in range(offs[v - 1] + 1, offs[v] + 1)]
    new = {h: i for i, h in enumerate(old, start=1)}
    phi = []
    f_up = set(new[a] for a in g.f_up if a in new)
    f_down = set(new[b] for b in g.f_down if b in new)
    for h in old:
        t = g.phi[h - 1]
        if t != BLANK and t in new:
            phi.append(new[t])
        else:
            phi.append(BLANK)
            if restore and t != BLANK:
                f_up.add(new[h])
    if restore:
        for a, t in g.edges:
            if t in new and a not in new:
                f_down.add(new[t])
    return Diagram(len(seq), tuple(g.lam[v - 1] for v in seq), tuple(phi),
                   tuple(sorted(f_up)), tuple(sorted(f_down)))


def sub_diagram(g: Diagram, seq: Sequence[int]) -> Diagram:
    """G[i_1,...,i_k]; half-edges of edges leaving the selection become cut."""
    seq = tuple(seq)
    _check_seq(g, seq)
    return _restrict(g, seq, restore=False)


def free_restriction(g: Diagram, seq: Sequence[int]) -> Diagram:
    """Like ``sub_diagram`` but half-edges of severed edges become free again."""
    seq = tuple(seq)
    _check_seq(g, seq)
    return _restrict(g, seq, restore=True)


def complement(g: Diagram | int, seq: Sequence[int]) -> tuple[int, ...]:
    n = g if isinstance(g, int) else g.n
    s = set(seq)
    return tuple(v for v in range(1, n + 1) if v not in s)


def connected_components(g: Diagram) -> list[tuple[int, ...]]:
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    blk = g.blocks
    for a, t in g.edges:
        ra, rt = find(blk[a - 1]), find(blk[t - 1])
        if ra != rt:
            parent[max(ra, rt)] = min(ra, rt)
    comps: dict[int, list[int]] = {}
    for v in range(1, g.n + 1):
        comps.setdefault(find(v), []).append(v)
    return sorted(tuple(c) for c in comps.values())


def is_connected(g: Diagram) -> bool:
    return len(connected_components(g)) == 1


def iso_split(g: Diagram) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (I, complement) with I a union of connected components."""
    comps = connected_components(g)
    out = []
    for mask in itertools.product((0, 1), repeat=len(comps)):
        I = tuple(sorted(v for c, m in zip(comps, mask) if m for v in c))
        out.append((I, complement(g, I)))
    return sorted(out)


def juxtapose(g: Diagram, h: Diagram) -> Diagram:
    w = g.omega
    return Diagram(
        g.n + h.n,
        g.lam + h.lam,
        g.phi + tuple(BLANK if t == BLANK else t + w for t in h.phi),
        g.f_up + tuple(a + w for a in h.f_up),
        g.f_down + tuple(b + w for b in h.f_down),
    )


def juxtapose_all(parts: Iterable[Diagram]) -> Diagram:
    out = EPSILON
    for p in parts:
        out = juxtapose(out, p)
    return out


def permute(g: Diagram, sigma: Sequence[int]) -> Diagram:
    """G^sigma: new vertex i is old vertex sigma(i).  The result may be an F-diagram."""
    sigma = tuple(sigma)
    if len(sigma) != g.n or sorted(sigma) != list(range(1, g.n + 1)):
        raise ValueError(f"sigma must be a permutation of 1..{g.n}")
    offs = _offsets(g.lam)
    order = [h for v in sigma for h in range(offs[v - 1] + 1, offs[v] + 1)]
    new = {h: i for i, h in enumerate(order, start=1)}
    phi = [BLANK] * g.omega
    for a, t in g.edges:
        phi[new[a] - 1] = new[t]
    return Diagram(
        g.n,
        tuple(g.lam[v - 1] for v in sigma),
        tuple(phi),
        tuple(sorted(new[a] for a in g.f_up)),
        tuple(sorted(new[b] for b in g.f_down)),
    )


def shuffle_permutations(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Words of the shuffle 1..n with n+1..n+m, in lexicographic order."""
    for pos in itertools.combinations(range(n + m), n):
        ps = set(pos)
        lo, hi = iter(range(1, n + 1)), iter(range(n + 1, n + m + 1))
        yield tuple(next(lo) if i in ps else next(hi) for i in range(n + m))


def inverse_permutation(sigma: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, start=1):
        inv[s - 1] = i
    return tuple(inv)
