"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Callable

from . import enumeration as E
from . import heisenberg as H
from . import hopf
from . import partitions as P
from .diagram import EPSILON, Diagram, format_diagram, format_diagram_tuple, juxtapose_all, parse_diagram
from .embeddings import EtaRanking, colset, g_pi
from .linalg import LinComb, format_lincomb
from .suites import Bounds, run_suite

UNITS = ("1", "ε", "eps", "{}", "∅")


class UsageError(ValueError):
    pass


# element syntax


class Syntax:
    """Parsing and printing for the basis elements of one algebra."""

    def __init__(self, parse: Callable, text: Callable, to_json: Callable, unit):
        self.parse_one = parse
        self.text_one = text
        self.json_one = to_json
        self.unit = unit

    def parse(self, s: str):
        if s.strip() in UNITS:
            return self.unit
        return self.parse_one(s.strip())

    def text(self, x) -> str:
        return "1" if x == self.unit else self.text_one(x)

    def json(self, x):
        return self.json_one(x)


def diagram_syntax(style: str) -> Syntax:
    fmt = format_diagram_tuple if style == "paper" else format_diagram

    def parse(s: str) -> Diagram:
        return juxtapose_all(parse_diagram(p) for p in s.split("|"))

    return Syntax(parse, fmt, lambda g: g.to_json(), EPSILON)


def partition_json(p, kind: P.Kind):
    if isinstance(kind, P.ColoredKind):
        return [{"block": list(b[0]), "color": b[1]} for b in p]
    return [list(b) for b in p]


def partition_syntax(kind: P.Kind) -> Syntax:
    def parse(s):
        p = P.parse_partition(s, kind)
        P.check_partition(p, kind)
        return p

    return Syntax(parse, kind.fmt, lambda p: partition_json(p, kind), ())


def _scan_letters(text: str) -> list[str]:
    """Split ``a{...}a{...}`` into the brace groups following each 'a'."""
    out = []
    i = 0
    while i < len(text):
        if text[i] != "a":
            raise ValueError(f"expected 'a' at position {i} of word {text!r}")
        i += 1
        if i >= len(text) or text[i] != "{":
            raise ValueError(f"expected '{{' at position {i} of word {text!r}")
        depth, start = 0, i
        while i < len(text):
            if text[i] in "{[":
                depth += 1
            elif text[i] in "}]":
                depth -= 1
            i += 1
            if depth == 0:
                break
        if depth:
            raise ValueError(f"unbalanced braces in word {text!r}")
        out.append(text[start:i])
    return out


def word_syntax(kind: P.Kind | None) -> Syntax:
    """Words over indivisible partitions (``a{{1,2}}a{{1,3},{2,4}}``) or over
    integer letters (``a1a2``)."""

    def parse(s: str) -> tuple:
        if kind is None:
            if not re.fullmatch(r"(a\d+)+", s):
                raise ValueError(f"free words look like a1a2a1, got {s!r}")
            return tuple(int(x) for x in re.findall(r"a(\d+)", s))
        letters = []
        for chunk in _scan_letters(s):
            p = P.parse_partition(chunk, kind)
            P.check_partition(p, kind)
            if not P.indivisible(p, kind):
                raise ValueError(f"letter {chunk} is not indivisible")
            letters.append(p)
        return tuple(letters)

    if kind is None:
        return Syntax(parse, lambda w: "".join(f"a{x}" for x in w), list, ())
    return Syntax(parse, lambda w: P.format_word(w, kind), lambda w: [partition_json(p, kind) for p in w], ())


# algebra registry


def colored_kind(args) -> P.ColoredKind:
    prefix = [int(x) for x in (args.colors or "").split(",") if x.strip()]
    if not prefix and args.color_default is None:
        return P.ColoredKind()
    return P.colored(prefix, args.color_default)


ALGEBRAS = {
    "b": ("diagram", "phi"),
    "b-dual": ("d", "psi"),
    "wsym": ("phi", "m", "word"),
    "piqsym": ("psi", "word"),
    "bwsym": ("phi",),
    "bpiqsym": ("psi",),
    "cwsym": ("phi", "word"),
    "cpiqsym": ("psi", "word"),
    "free": ("word",),
}


def _kind_for(algebra: str, args) -> P.Kind | None:
    if algebra in ("wsym", "piqsym"):
        return P.SET
    if algebra in ("bwsym", "bpiqsym"):
        return P.LIST
    if algebra in ("cwsym", "cpiqsym"):
        return colored_kind(args)
    return None


def _word_table(kind: P.Kind, n: int) -> P.DeltaTable:
    return P.partition_delta_table(kind, n)


def operations(algebra: str, basis: str, args):
    """(syntax, product, coproduct) for the given algebra and basis."""
    if algebra not in ALGEBRAS:
        raise UsageError(f"unknown algebra {algebra!r}; choose from {', '.join(ALGEBRAS)}")
    if basis not in ALGEBRAS[algebra]:
        raise UsageError(f"basis {basis!r} is not available for {algebra}; choose from {', '.join(ALGEBRAS[algebra])}")
    if algebra in ("b", "b-dual"):
        syn = diagram_syntax(args.style)
        if algebra == "b" and basis == "diagram":
            return syn, hopf.star_basis, hopf.coproduct_basis
        if algebra == "b":
            return syn, lambda g, h: LinComb.basis(juxtapose_all([g, h])), _phi_coproduct
        if basis == "d":
            return syn, hopf.dual_product_basis, hopf.dual_coproduct_basis
        return syn, hopf.psi_product_via_d, hopf.psi_coproduct_direct
    kind = _kind_for(algebra, args)
    if basis == "word":
        syn = word_syntax(kind)
        if algebra == "free":
            def mul(u, v):
                return P.word_dual_product(u, v, P.shuffle_table(set(u) | set(v)))
            return syn, mul, _deconcatenate
        size = lambda w: sum(P.size(x, kind) for x in w)  # noqa: E731
        if algebra in ("wsym", "cwsym"):
            return (syn, lambda u, v: LinComb.basis(u + v),
                    lambda w: _word_table(kind, size(w)).coproduct(w))
        return (syn, lambda u, v: P.word_dual_product(u, v, _word_table(kind, size(u) + size(v))),
                _deconcatenate)
    syn = partition_syntax(kind)
    if basis == "m":
        return syn, P.m_product, P.m_coproduct
    if basis == "phi":
        return syn, lambda p, q: P.phi_product(p, q, kind), lambda p: P.phi_coproduct(p, kind)
    return syn, lambda p, q: P.psi_product(p, q, kind), lambda p: P.dual_coproduct(p, kind)


def _phi_coproduct(g: Diagram) -> LinComb:
    """Coproduct of Phi^G written back in the Phi basis."""
    cop = hopf.coproduct(hopf.phi_to_diagram(g))
    left = {}
    for (a, b), c in cop.items():
        for pa, ca in hopf.diagram_to_phi(LinComb.basis(a)).items():
            for pb, cb in hopf.diagram_to_phi(LinComb.basis(b)).items():
                left[(pa, pb)] = left.get((pa, pb), 0) + c * ca * cb
    return LinComb(left)


def _deconcatenate(w) -> LinComb:
    return LinComb.from_counts((w[:i], w[i:]) for i in range(len(w) + 1))


# output


def emit(x: LinComb, syn: Syntax, args, out, tensor: bool = False) -> None:
    if tensor:
        text = lambda t: f"{syn.text(t[0])} ⊗ {syn.text(t[1])}"  # noqa: E731
        to_json = lambda t: [syn.json(t[0]), syn.json(t[1])]  # noqa: E731
    else:
        text, to_json = syn.text, syn.json
    if args.format == "json":
        terms = [{"coeff": _json_coeff(c), "element": to_json(b)} for b, c in x.items()]
        out.write(json.dumps({"terms": terms}, ensure_ascii=False) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["coeff", "element"])
        for b, c in x.items():
            w.writerow([str(c), text(b)])
    else:
        out.write(format_lincomb(x, text) + "\n")


def _json_coeff(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return c


# commands


def _split_operands(values: list[str], n: int, algebra: str) -> tuple[str, list[str]]:
    if len(values) == n + 1:
        return values[0], values[1:]
    if len(values) == n:
        return ALGEBRAS.get(algebra, ("",))[0], values
    raise UsageError(f"expected [basis] followed by {n} operand(s)")


def cmd_product(args, out) -> int:
    basis, ops = _split_operands(args.operands, 2, args.algebra)
    syn, mul, _ = operations(args.algebra, basis, args)
    x, y = (syn.parse(s) for s in ops)
    emit(mul(x, y), syn, args, out)
    return 0


def cmd_coproduct(args, out) -> int:
    basis, ops = _split_operands(args.operands, 1, args.algebra)
    syn, _, comul = operations(args.algebra, basis, args)
    emit(comul(syn.parse(ops[0])), syn, args, out, tensor=True)
    return 0


CONVERSIONS = {
    ("diagram", "phi"): ("b", hopf.diagram_to_phi),
    ("phi", "diagram"): ("b", hopf.phi_lincomb_to_diagram),
    ("psi", "d"): ("b", hopf.psi_to_d),
    ("d", "psi"): ("b", hopf.d_to_psi),
    ("phi", "m"): ("set", lambda x: sum((P.phi_to_m(p) * c for p, c in x.items()), LinComb())),
    ("m", "phi"): ("set", P.m_to_phi),
    ("partition", "word"): ("set", lambda x: x.map(lambda p: P.factors(p))),
    ("word", "partition"): ("set", lambda x: x.map(lambda w: P.unfactor(w))),
}


def cmd_convert(args, out) -> int:
    key = (args.source, args.target)
    if key not in CONVERSIONS:
        pairs = ", ".join(f"{a}->{b}" for a, b in CONVERSIONS)
        raise UsageError(f"no conversion from {args.source} to {args.target}; available: {pairs}")
    family, f = CONVERSIONS[key]
    if family == "b":
        src_syn = dst_syn = diagram_syntax(args.style)
    else:
        part, word = partition_syntax(P.SET), word_syntax(P.SET)
        src_syn = word if args.source == "word" else part
        dst_syn = word if args.target == "word" else part
    x = LinComb.basis(src_syn.parse(args.element))
    emit(f(x), dst_syn, args, out)
    return 0


def cmd_closure(args, out) -> int:
    syn = diagram_syntax(args.style)
    g = syn.parse(args.element)
    elems = hopf.downset(g) if args.down else hopf.upset(g)
    emit(LinComb({h: 1 for h in elems}), syn, args, out)
    return 0


STATS = ("beta", "alpha", "c", "kappa", "d")


def cmd_sequence(args, out) -> int:
    dd = E.resolve_generators(args.generators)
    n = args.limit
    stat = args.stat
    if args.brute:
        with E.cap_scope(n, n):
            by = "weight" if stat in ("alpha", "d") else "size"
            counts = E.brute_counts(dd, n, by)
        table = counts[stat] if stat in counts else None
        if table is None:
            raise UsageError(f"statistic {stat} is not available by brute force")
    elif stat == "beta":
        table = [E.beta(dd, k) for k in range(n + 1)]
    elif stat == "alpha":
        table = [E.alpha(dd, k) for k in range(n + 1)]
    elif stat == "kappa":
        m = max((len(g.f_up) for g in dd), default=0)
        table = [[E.count_kappa(dd, k, p) for p in range(m * k + 1)] for k in range(n + 1)]
    elif stat == "d":
        table = [[E.count_d(dd, k, p) for p in range(k + 1)] for k in range(n + 1)]
    else:
        with E.cap_scope(n, n):
            table = E.connected_counts(dd, n)
    if args.format == "json":
        out.write(json.dumps({"generators": args.generators, "stat": stat, "values": table}) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", stat])
        for k, v in enumerate(table):
            w.writerow([k, " ".join(map(str, v)) if isinstance(v, list) else v])
    else:
        if table and isinstance(table[0], list):
            for k, row in enumerate(table):
                out.write(f"{k}: {' '.join(map(str, row))}\n")
        else:
            out.write(" ".join(map(str, table)) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    b = Bounds(seed=args.seed)
    for attr, val in (("max_weight", args.max_weight), ("max_size", args.max_size), ("order", args.order),
                      ("max_n", args.max_n)):
        if val is not None:
            setattr(b, attr, val)
    if args.max_weight is not None:
        b.duality_weight = args.max_weight
    try:
        checks = run_suite(args.suite, b)
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}")
    if args.format == "json":
        out.write(json.dumps([c.__dict__ for c in checks]) + "\n")
    else:
        for c in checks:
            out.write(c.line() + "\n")
    return 0 if all(c.ok for c in checks) else 1


def cmd_embed(args, out) -> int:
    if args.what == "g-pi":
        p = P.parse_partition(args.element)
        g = g_pi(p)
        syn = diagram_syntax(args.style)
        if args.format == "json":
            out.write(json.dumps(g.to_json()) + "\n")
        else:
            out.write(syn.text(g) + "\n")
        return 0
    if not args.generators:
        raise UsageError("colset needs --generators")
    dd = E.resolve_generators(args.generators)
    eta = EtaRanking(dd)
    g = diagram_syntax(args.style).parse(args.element)
    c = colset(g, eta)
    kind = P.ColoredKind()
    if args.format == "json":
        out.write(json.dumps(partition_json(c, kind)) + "\n")
    else:
        out.write((kind.fmt(c) if c else "1") + "\n")
    return 0


def cmd_normal_order(args, out) -> int:
    w = H.parse_word(args.word)
    res = H.normal_order(w)
    if args.format == "json":
        terms = [{"k": k, "m": m, "coeff": c} for (k, m), c in sorted(res.terms.items(), reverse=True)]
        out.write(json.dumps({"terms": terms}) + "\n")
    elif args.format == "csv":
        wr = csv.writer(out, lineterminator="\n")
        wr.writerow(["k", "m", "coeff"])
        for (k, m), c in sorted(res.terms.items(), reverse=True):
            wr.writerow([k, m, c])
    else:
        out.write(H.format_normal(res) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--style", choices=("b", "paper"), default="b",
                        help="diagram notation: B(n; ...) or (n,[...],...)")
    common.add_argument("--colors", help="color bounds a_1,a_2,... for colored partitions")
    common.add_argument("--color-default", type=int, help="color bound for block sizes beyond --colors")
    common.add_argument("--jobs", type=int, default=1, help="worker cap (computations run in one process)")

    p = argparse.ArgumentParser(prog="bdiag", description="B-diagram Hopf algebras and partition algebras")
    sub = p.add_subparsers(dest="cmd", required=True)

    q = sub.add_parser("product", parents=[common], help="product of two basis elements")
    q.add_argument("algebra")
    q.add_argument("operands", nargs="+", metavar="[basis] x y")
    q.set_defaults(func=cmd_product)

    q = sub.add_parser("coproduct", parents=[common], help="coproduct of a basis element")
    q.add_argument("algebra")
    q.add_argument("operands", nargs="+", metavar="[basis] x")
    q.set_defaults(func=cmd_coproduct)

    q = sub.add_parser("convert", parents=[common], help="change of basis")
    q.add_argument("--from", dest="source", required=True)
    q.add_argument("--to", dest="target", required=True)
    q.add_argument("element")
    q.set_defaults(func=cmd_convert)

    q = sub.add_parser("closure", parents=[common], help="diagrams above (or below) a diagram in the order")
    q.add_argument("element")
    q.add_argument("--down", action="store_true")
    q.set_defaults(func=cmd_closure)

    for name in ("sequence", "enumerate"):
        q = sub.add_parser(name, parents=[common], help="counting sequences of a generator set")
        q.add_argument("--generators", required=True)
        q.add_argument("--stat", choices=STATS, default="beta")
        q.add_argument("--limit", type=int, required=True)
        q.add_argument("--by", choices=("size", "weight"), help="implied by --stat")
        q.add_argument("--brute", action="store_true", help="count by exhaustive generation")
        q.set_defaults(func=cmd_sequence)

    q = sub.add_parser("verify", parents=[common], help="run a verification suite")
    q.add_argument("suite")
    q.add_argument("--max-weight", type=int)
    q.add_argument("--max-size", type=int)
    q.add_argument("--order", type=int)
    q.add_argument("--max-n", type=int)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--generators")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("embed", parents=[common], help="G_pi of a set partition, colset of a diagram")
    q.add_argument("what", choices=("g-pi", "colset"))
    q.add_argument("element")
    q.add_argument("--generators")
    q.set_defaults(func=cmd_embed)

    q = sub.add_parser("normal-order", parents=[common], help="normal ordering of a boson word")
    q.add_argument("word")
    q.set_defaults(func=cmd_normal_order)
    p.subcommands = sub.choices
    return p


def parse_args(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    """Options may appear between operands, so each subcommand is parsed
    with intermixed parsing."""
    if argv and argv[0] in parser.subcommands:
        args = parser.subcommands[argv[0]].parse_intermixed_args(argv[1:])
        args.cmd = argv[0]
        return args
    return parser.parse_args(argv)


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parse_args(parser, sys.argv[1:] if argv is None else list(argv))
    except SystemExit as e:
        return int(e.code or 0)
    try:
        buf = io.StringIO()
        code = args.func(args, buf)
        out.write(buf.getvalue())
        return code
    except E.CapExceeded as e:
        err.write(f"error: {e}\n")
        return 2
    except (UsageError, ValueError) as e:
        err.write(f"error: {e}\n")
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
