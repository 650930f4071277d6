"""Generator sets, exhaustive generation and the counting recurrences."""

from math import factorial

import pytest

from bdiag import enumeration as E
from bdiag.diagram import make
from bdiag.heisenberg import bell, fibonacci, lah, stirling2
from bdiag.series import SeriesQ


def test_resolve_presets_and_trees():
    assert E.resolve_generators("S") == E.PRESETS["S"]
    assert E.resolve_generators("T:{2}") == E.PRESETS["BW"]
    assert len(E.resolve_generators("T:1,2,3")) == 3
    with pytest.raises(ValueError):
        E.resolve_generators("nope")


def test_generators_from_file(tmp_path):
    f = tmp_path / "gens.txt"
    f.write_text("B(1; 1; _; {1}; {1})\n")
    assert E.resolve_generators(str(f)) == E.PRESETS["W"]
    f.write_text("B(2; 1,1; 2_; {}; {})\n")
    with pytest.raises(ValueError):
        E.resolve_generators(str(f))


def test_vertex_type():
    g = make(2, [2, 2], "43__", [3, 4], [1, 2])
    assert E.uses_only(g, E.PRESETS["FREE12"])
    assert not E.uses_only(g, E.PRESETS["W"])


def test_full_alphabet_small():
    levels = E.full_alphabet_by_weight(2)
    assert len(levels[0]) == 1
    assert len(levels[1]) == E.enumdiag(1, 0) + E.enumdiag(1, 1)


@pytest.mark.parametrize("p", range(5))
def test_enumdiag_matches_generation(p):
    levels = E.full_alphabet_by_weight(p)
    for q in range(p + 1):
        assert E.enumdiag(p, q) == sum(1 for g in levels[p] if len(g.f_up) == q)


def test_beta_s():
    assert [E.beta(E.PRESETS["S"], n) for n in range(10)] == [1, 2, 5, 14, 43, 142, 499, 1850, 7193, 29186]


def test_beta_w_is_bell():
    assert [E.beta(E.PRESETS["W"], n) for n in range(8)] == [bell(n) for n in range(8)]


def test_alpha_f_is_fibonacci():
    assert [E.alpha(E.PRESETS["F"], n) for n in range(11)] == [fibonacci(n) for n in range(11)]


def test_kappa_stirling_and_lah():
    for n in range(6):
        assert [E.count_kappa(E.PRESETS["W"], n, k) for k in range(n + 1)] == [stirling2(n, k) for k in range(n + 1)]
        # a BW vertex has two outer half-edges: kappa is shifted by n
        assert [E.count_kappa(E.PRESETS["BW"], n, n + k) for k in range(n + 1)] == [lah(n, k) for k in range(n + 1)]


def test_brute_agrees_with_recurrence():
    s = E.PRESETS["S"]
    assert E.brute_counts(s, 5, "size")["beta"] == [E.beta(s, n) for n in range(6)]
    f = E.PRESETS["F"]
    assert E.brute_counts(f, 6, "weight")["alpha"] == [E.alpha(f, n) for n in range(7)]


def test_connected_bw_factorial():
    assert E.connected_counts(E.PRESETS["BW"], 5)[1:] == [factorial(n) for n in range(1, 6)]


def test_caps():
    with pytest.raises(E.CapExceeded):
        E.by_size(E.PRESETS["S"], 50)
    with E.cap_scope(9, 9):
        assert E.caps() == (9, 9)
    assert E.caps() == (E.DEFAULT_WEIGHT_CAP, E.DEFAULT_SIZE_CAP)


@pytest.mark.parametrize("name", ["W", "S", "F"])
def test_exp_formula_order_6(name):
    assert E.verify_exp_formula(E.PRESETS[name], 6).ok


@pytest.mark.parametrize("e", [(2,), (3,), (1, 2)])
def test_forest_ode_closed_form(e):
    assert E.forest_ode(e, 6) == E.forest_closed_form(e, 6)
    f, rep = E.forest_series(e, 6, brute_order=4)
    assert rep.ok, rep


def test_tree_count_product():
    assert [E.tree_count_product(2, n) for n in range(1, 6)] == [1, 2, 6, 24, 120]
    assert [E.tree_count_product(3, n) for n in range(1, 5)] == [1, 3, 15, 105]


def test_series_exp_log():
    x = SeriesQ([0, 1, 3], 6)
    assert x.exp().log() == x
