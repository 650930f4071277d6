"""Normal ordering of boson words and the classical counting sequences used as
cross-checks (Stirling, Bell, Lah, Fibonacci)."""

from __future__ import annotations

import random
import re
from functools import lru_cache
from math import comb, factorial

from .linalg import LinComb

CREATE = "c"
ANNIHILATE = "a"

_REPEAT = re.compile(r"\(([^()]*)\)\^(\d+)")


def parse_word(text: str) -> str:
    """Letters '+' or 'c' for a-dagger, '-' or 'a' for a; '(w)^n' repeats w."""
    while True:
        new = _REPEAT.sub(lambda m: m.group(1) * int(m.group(2)), text)
        if new == text:
            break
        text = new
    out = []
    for i, ch in enumerate(text):
        if ch in "+c":
            out.append(CREATE)
        elif ch in "-a":
            out.append(ANNIHILATE)
        elif ch in " \t*":
            continue
        else:
            raise ValueError(f"unexpected {ch!r} at position {i}")
    return "".join(out)


def normal_order(word: str | LinComb, rng: random.Random | None = None) -> LinComb:
    """Rewrite a a+ -> a+ a + 1 until no 'ac' factor is left.

    The result maps (k, m) to the coefficient of (a+)^k a^m.  With ``rng`` the
    rewriting position is picked at random, otherwise the leftmost one.
    """
    pending = dict(word.terms) if isinstance(word, LinComb) else {word: 1}
    out: dict = {}
    while pending:
        w, c = pending.popitem()
        spots = [i for i in range(len(w) - 1) if w[i] == ANNIHILATE and w[i + 1] == CREATE]
        if not spots:
            k = w.count(CREATE)
            key = (k, len(w) - k)
            out[key] = out.get(key, 0) + c
            continue
        i = rng.choice(spots) if rng else spots[0]
        for nw in (w[:i] + CREATE + ANNIHILATE + w[i + 2:], w[:i] + w[i + 2:]):
            pending[nw] = pending.get(nw, 0) + c
    return LinComb(out)


def format_normal(x: LinComb) -> str:
    def mono(km):
        k, m = km
        parts = []
        if k:
            parts.append("(a+)" if k == 1 else f"(a+)^{k}")
        if m:
            parts.append("a" if m == 1 else f"a^{m}")
        return " ".join(parts) or "1"

    if not x:
        return "0"
    out = []
    for km, c in sorted(x.terms.items(), reverse=True):
        term = mono(km) if c == 1 else f"{c}*{mono(km)}"
        out.append(term)
    return " + ".join(out).replace("+ -", "- ")


def katriel_rhs(n: int) -> LinComb:
    return LinComb({(k, k): stirling2(n, k) for k in range(n + 1)})


def check_katriel(n: int) -> bool:
    return normal_order("ca" * n) == katriel_rhs(n)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def bell(n: int) -> int:
    return sum(stirling2(n, k) for k in range(n + 1))


@lru_cache(maxsize=None)
def lah(n: int, k: int) -> int:
    """Unsigned Lah number: set partitions of 1..n into k lists."""
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return (n - 1 + k) * lah(n - 1, k) + lah(n - 1, k - 1)


def lah_closed(n: int, k: int) -> int:
    if n == k == 0:
        return 1
    if k == 0:
        return 0
    return comb(n - 1, k - 1) * factorial(n) // factorial(k)


@lru_cache(maxsize=None)
def fibonacci(n: int) -> int:
    """F_0 = F_1 = 1."""
    return 1 if n < 2 else fibonacci(n - 1) + fibonacci(n - 2)
