import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bdiag import heisenberg as H
from bdiag.linalg import LinComb


def test_parse_word():
    assert H.parse_word("(+-)^2") == "caca"
    assert H.parse_word("a c") == "ac"
    with pytest.raises(ValueError):
        H.parse_word("x")


def test_commutator():
    assert H.normal_order("ac") == LinComb({(1, 1): 1, (0, 0): 1})


@pytest.mark.parametrize("n", range(9))
def test_katriel(n):
    assert H.check_katriel(n)


def test_format():
    assert H.format_normal(H.normal_order("caca")) == "(a+)^2 a^2 + (a+) a"
    assert H.format_normal(LinComb()) == "0"


@given(st.text(alphabet="ac", max_size=8), st.integers(0, 2 ** 16))
def test_rewriting_order_irrelevant(word, seed):
    assert H.normal_order(word) == H.normal_order(word, random.Random(seed))


@given(st.text(alphabet="ac", max_size=8))
def test_balance_preserved(word):
    shift = word.count("c") - word.count("a")
    assert all(k - m == shift for k, m in H.normal_order(word).support())


def test_sequences():
    assert [H.bell(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
    assert [H.fibonacci(n) for n in range(8)] == [1, 1, 2, 3, 5, 8, 13, 21]
    for n in range(7):
        for k in range(n + 1):
            assert H.lah(n, k) == H.lah_closed(n, k)
