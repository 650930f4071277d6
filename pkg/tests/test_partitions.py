"""Set, list and colored partitions: parsing, products, coproducts, the word engine."""

import pytest
from hypothesis import given

from bdiag import partitions as P
from bdiag.linalg import LinComb, check_bialgebra

from conftest import partitions

CK = P.colored((1, 3), 0)


def parse(text, kind=P.SET):
    return P.parse_partition(text, kind)


def lc(texts, kind=P.SET):
    out = LinComb()
    for t in texts:
        c, _, body = t.rpartition("*")
        out = out + LinComb.basis(parse(body, kind)) * (int(c) if c else 1)
    return out


def test_parse_and_format():
    p = parse("{{2,3},{1}}")
    assert p == ((1,), (2, 3))
    assert P.fmt(p) == "{{1},{2,3}}"
    assert P.fmt(parse("{[3,1],[2]}", P.LIST), P.LIST) == "{[3,1],[2]}"
    assert P.fmt(parse("{[{1,2},3]}", CK), CK) == "{[{1,2},3]}"


@pytest.mark.parametrize("text", ["{{1,2},{2}}", "{{1},{3}}", "{{1,2"])
def test_invalid_set_partitions(text):
    with pytest.raises(ValueError):
        P.check_partition(parse(text))


def test_color_bound_enforced():
    P.check_partition(parse("{[{1,2},3]}", CK), CK)
    with pytest.raises(ValueError):
        P.check_partition(parse("{[{1},2]}", CK), CK)
    with pytest.raises(ValueError):
        P.check_partition(parse("{[{1,2,3},1]}", CK), CK)


def test_shifted_union_and_indivisible():
    p, q = parse("{{1,3},{2}}"), parse("{{1,4},{2,3}}")
    assert P.shifted_union(p, q) == parse("{{1,3},{2},{4,7},{5,6}}")
    assert P.indivisible(parse("{{1,3},{2}}"))
    assert not P.indivisible(parse("{{1},{2,3}}"))
    assert P.factors(parse("{{1,3},{2},{4,5}}")) == (parse("{{1,3},{2}}"), parse("{{1,2}}"))


@given(partitions())
def test_factor_round_trip(p):
    assert P.unfactor(P.factors(p)) == p
    assert all(P.indivisible(x) for x in P.factors(p))


def test_counts():
    assert [len(list(P.set_partitions(n))) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    assert [len(list(P.list_partitions(n))) for n in range(6)] == [1, 1, 3, 13, 73, 501]
    two = P.colored(None, 2)
    assert [len(list(P.colored_partitions(n, two))) for n in range(4)] == [1, 2, 6, 22]


def test_m_product_example():
    got = P.m_product(parse("{{1,3},{2}}"), parse("{{1,4},{2,3}}"))
    assert got == lc(["{{1,3},{2},{4,7},{5,6}}", "{{1,3,4,7},{2},{5,6}}", "{{1,3},{2,4,7},{5,6}}",
                      "{{1,3,5,6},{2},{4,7}}", "{{1,3},{2,5,6},{4,7}}", "{{1,3,4,7},{2,5,6}}",
                      "{{1,3,5,6},{2,4,7}}"])


def test_m_coproduct_example():
    p = parse("{{1,3,5,6},{2,4,7}}")
    want = LinComb({(p, ()): 1, ((), p): 1, (parse("{{1,2,3,4}}"), parse("{{1,2,3}}")): 1,
                    (parse("{{1,2,3}}"), parse("{{1,2,3,4}}")): 1})
    assert P.m_coproduct(p) == want


@given(partitions())
def test_phi_m_round_trip(p):
    assert P.m_to_phi(P.phi_to_m(p)) == LinComb.basis(p)


def test_colored_psi_products():
    a = parse("{[{1,2},3]}", CK)
    b = parse("{[{1},1],[{2,3},2]}", CK)
    got = P.psi_product(a, b, CK)
    assert len(got) == 10 and all(c == 1 for _, c in got.items())
    assert parse("{[{4,5},3],[{1},1],[{2,3},2]}", CK) in got.support()
    got = P.psi_product(parse("{[{1,2},2]}", CK), b, CK)
    assert sorted(c for _, c in got.items()) == [1, 1, 1, 1, 2, 2, 2]


def test_colored_coproduct_example():
    p = parse("{[{1,3},1],[{2,4},2],[{5},1]}", CK)
    assert P.dual_coproduct(p, CK) == LinComb({
        (p, ()): 1, ((), p): 1,
        (parse("{[{1,3},1],[{2,4},2]}", CK), parse("{[{1},1]}", CK)): 1,
    })


def test_aleph():
    assert P.aleph(parse("{{1,3},{2,5},{4}}")) == parse("{[1,3],[2,5],[4]}", P.LIST)


def test_letter_coproduct():
    w = (parse("{{1,3},{2,5},{4,6}}"),)
    table = P.partition_delta_table(P.SET, 6)
    d = table.coproduct(w)
    a12, a1324 = parse("{{1,2}}"), parse("{{1,3},{2,4}}")
    assert d.coeff(((a12,), (a1324,))) == 2
    assert d.coeff(((a12, a12), (a12,))) == 1
    assert len(d) == 6


def test_shuffle_words():
    got = P.word_dual_product((1, 2), (1,), P.shuffle_table({1, 2}))
    assert got == LinComb({(1, 1, 2): 2, (1, 2, 1): 1})


def test_delta_table_rejects_unit_split():
    with pytest.raises(ValueError):
        P.DeltaTable({"x": LinComb({((), ()): 1})})


@given(partitions(max_size=3), partitions(max_size=3))
def test_word_engine_matches_direct(p, q):
    assert P.dual_product_via_words(p, q) == P.psi_product(p, q) == P.dual_product(p, q)


@given(partitions(P.LIST, 3), partitions(P.LIST, 3))
def test_list_word_engine(p, q):
    assert P.dual_product_via_words(p, q, P.LIST) == P.dual_product(p, q, P.LIST)


@pytest.mark.parametrize("kind", [P.SET, P.LIST, P.colored(None, 2)], ids=["set", "list", "colored"])
def test_bialgebra_laws_size_3(kind):
    sample = [p for n in range(4) for p in P.partitions_of(kind, n)]
    assert check_bialgebra(P.bialgebra_phi(kind), sample, 3).ok
    assert check_bialgebra(P.bialgebra_dual(kind), sample, 3).ok
