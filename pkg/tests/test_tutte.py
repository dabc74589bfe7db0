from __future__ import annotations

from fractions import Fraction

import pytest

from tuttekit.families import circuit, complete, dipole, random_corpus, sq_strip, tri_strip
from tuttekit.multigraph import Multigraph
from tuttekit.polynomial import BiPoly
from tuttekit.transfer import potts_transfer, tutte_transfer
from tuttekit.tutte import (GuardError, potts, potts_oracle, t_from_z, tutte_dc, tutte_oracle,
                            z_from_t)


def T(text):
    return BiPoly.parse(text)


def test_basic_graphs():
    assert tutte_dc(Multigraph(2, [(0, 1)])).polynomial == T("x")
    assert tutte_dc(Multigraph(1, [(0, 0)])).polynomial == T("y")
    assert tutte_dc(circuit(4)).polynomial == T("x^3 + x^2 + x + y")
    assert tutte_dc(complete(4)).polynomial == T("x^3 + 3*x^2 + 2*x + 4*x*y + 2*y + 3*y^2 + y^3")


@pytest.mark.parametrize("k", [2, 3, 5, 7])
def test_duality_circuit_dipole(k):
    a = tutte_dc(circuit(k)).polynomial if k >= 3 else T("x + y")
    b = tutte_dc(dipole(k)).polynomial
    assert b == BiPoly({(j, i): c for (i, j), c in a.c.items()})


def test_multiplicative_on_components():
    g = circuit(3).disjoint_union(complete(4))
    assert tutte_dc(g).polynomial == tutte_dc(circuit(3)).polynomial * tutte_dc(complete(4)).polynomial


def test_dc_matches_oracle_on_corpus():
    for g in random_corpus(60, seed=99):
        assert tutte_dc(g).polynomial == tutte_oracle(g).polynomial


def test_potts_conversion_roundtrip():
    for g in random_corpus(40, seed=5):
        t = tutte_oracle(g)
        z = z_from_t(t, t.k, t.n)
        assert z.polynomial == potts_oracle(g).polynomial
        assert t_from_z(z, t.k, t.n).polynomial == t.polynomial


def test_spanning_subgraph_counts():
    t = tutte_dc(complete(4))
    assert t(1, 1) == 16  # spanning trees
    assert t(2, 2) == 2 ** 6


@pytest.mark.parametrize("g", [sq_strip(2, 4, "F", "P"), tri_strip(3, 3), sq_strip(3, 3, "P", "T"),
                               complete(5)], ids=["sq2P", "tri3", "sq3PT", "K5"])
def test_transfer_route(g):
    assert tutte_transfer(g).polynomial == tutte_dc(g).polynomial
    q, v = Fraction(7, 3), Fraction(-2, 5)
    assert potts_transfer(g, q, v) == potts(g).polynomial.eval_exact(q, v)


def test_oracle_guard():
    with pytest.raises(GuardError):
        tutte_oracle(sq_strip(3, 5))
