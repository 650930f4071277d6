from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from bdiag.linalg import Antipode, Bialgebra, LinComb, check_bialgebra, format_lincomb, pairing, tensor

coeffs = st.integers(-3, 3) | st.fractions(max_denominator=4).map(lambda f: Fraction(f).limit_denominator(4))
combs = st.dictionaries(st.integers(0, 5), coeffs, max_size=4).map(LinComb)


def test_zero_terms_dropped():
    x = LinComb({1: 2, 2: 0}) + LinComb({1: -2})
    assert not x
    assert len(LinComb({1: 1, 2: 3})) == 2


def test_fraction_normalized_to_int():
    x = LinComb({1: Fraction(4, 2)})
    assert isinstance(x.coeff(1), int)


@given(combs, combs)
def test_add_commutes(x, y):
    assert x + y == y + x


@given(combs)
def test_sub_self_is_zero(x):
    assert not (x - x)


def test_format():
    assert format_lincomb(LinComb({"a": 1, "b": -2, "c": Fraction(1, 2)})) == "a - 2*b + 1/2*c"
    assert format_lincomb(LinComb()) == "0"


def test_pairing_and_tensor():
    x, y = LinComb({1: 2, 2: 1}), LinComb({1: 3})
    assert pairing(x, y) == 6
    assert tensor(x, y) == LinComb({(1, 1): 6, (2, 1): 3})


def _shuffle_algebra():
    """Shuffle product and deconcatenation on words over {1, 2}."""

    def mul(u, v):
        if not u or not v:
            return LinComb.basis(u + v)
        return (LinComb({(u[0],) + w: c for w, c in mul(u[1:], v).terms.items()})
                + LinComb({(v[0],) + w: c for w, c in mul(u, v[1:]).terms.items()}))

    def comul(w):
        return LinComb.from_counts((w[:i], w[i:]) for i in range(len(w) + 1))

    return Bialgebra(mul, comul, (), len, "Sh")


def test_shuffle_algebra_passes_checks():
    words = [()] + [(a,) for a in (1, 2)] + [(a, b) for a in (1, 2) for b in (1, 2)]
    rep = check_bialgebra(_shuffle_algebra(), words, 4)
    assert rep.ok, rep


def test_antipode_of_letter_word():
    S = Antipode(_shuffle_algebra())
    assert S((1, 2)) == LinComb.basis((2, 1))
    assert S((1,)) == LinComb({(1,): -1})


def test_broken_coproduct_is_caught():
    B = _shuffle_algebra()
    bad = Bialgebra(B.mul, lambda w: LinComb.basis((w, ())), (), len, "bad")
    rep = check_bialgebra(bad, [(), (1,)], 2)
    assert not rep.ok
