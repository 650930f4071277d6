from bdiag import enumeration as E
from bdiag import partitions as P
from bdiag.diagram import juxtapose, make
from bdiag.embeddings import (
    EtaRanking,
    chi,
    colset,
    colset_permutation_check,
    g_pi,
    pi_of,
    verify_chi_morphism,
    verify_wsym_embedding,
)
from bdiag.hopf import dual_product_basis

import pytest


def test_g_pi_example():
    g = g_pi(P.parse_partition("{{1,4},{2,3},{5}}"))
    assert g == make(5, [1] * 5, "43___", [3, 4, 5], [1, 2, 5])
    assert pi_of(g) == P.parse_partition("{{1,4},{2,3},{5}}")


def test_wsym_embedding():
    assert verify_wsym_embedding(4).ok


def test_eta_counts_free12():
    eta = EtaRanking(E.PRESETS["FREE12"])
    assert [eta.c(n) for n in range(4)] == [0, 2, 11, 129]


def test_colset_example():
    eta = EtaRanking(E.PRESETS["FREE12"])
    g1 = make(2, [2, 2], [4, 3, 0, 0], [3, 4], [1, 2])
    g2 = make(1, [2], [0, 0], [1, 2], [1, 2])
    c = colset(juxtapose(g1, g2), eta)
    assert c == ((((1, 2), eta.eta(g1)), ((3,), eta.eta(g2))))
    assert eta.eta(g1) == 11 and eta.eta(g2) == 2
    assert len(chi(dual_product_basis(g1, g2), eta)) == 3


def test_colset_rejects_foreign_vertex():
    eta = EtaRanking(E.PRESETS["W"])
    with pytest.raises(ValueError):
        colset(make(1, [2], "__", [1, 2], [1, 2]), eta)


def test_chi_morphism_w():
    assert verify_chi_morphism(E.PRESETS["W"], 4).ok


def test_chi_morphism_free12_small():
    assert verify_chi_morphism(E.PRESETS["FREE12"], 3).ok


def test_colset_shuffles():
    eta = EtaRanking(E.PRESETS["FREE12"])
    levels = E.by_size(E.PRESETS["FREE12"], 2)
    for g in levels[1]:
        for h in levels[2]:
            assert colset_permutation_check(g, h, eta)
