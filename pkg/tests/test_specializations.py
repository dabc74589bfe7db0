from __future__ import annotations

from fractions import Fraction

import pytest

from tuttekit.families import circuit, clan_cyclic, complete, random_corpus, sq_strip, tree
from tuttekit.polynomial import UniPoly
from tuttekit.specializations import (acyclic_count, acyclic_oracle, chromatic, chromatic_oracle, flow,
                                      flow_oracle, reliability, reliability_oracle, valuations)
from tuttekit.tutte import GuardError

q = UniPoly.x("q")
p = UniPoly.x("p")


def test_known_polynomials():
    assert chromatic(complete(4)) == q * (q - 1) * (q - 2) * (q - 3)
    m = 5
    assert chromatic(circuit(m)) == (q - 1) ** m + (-1) ** m * (q - 1)
    assert flow(circuit(6)) == q - 1
    assert flow(complete(4)) == (q - 1) * (q - 2) * (q - 3)
    assert reliability(tree(5)) == p ** 4
    assert reliability(circuit(3)) == p ** 2 * (3 - 2 * p)


def test_transfer_route_for_chromatic():
    g = sq_strip(3, 4, "P", "F")
    assert chromatic(g, method="transfer") == chromatic(g)


def test_oracles_on_corpus():
    for g in random_corpus(40, seed=17):
        if g.m > 12:
            continue
        P, F = chromatic(g), flow(g)
        for q0 in (1, 2, 3):
            assert P.eval_exact(q0) == chromatic_oracle(g, q0)
            assert F.eval_exact(q0) == flow_oracle(g, q0)
            assert F.eval_exact(q0) == flow_oracle(g, q0, flip=[i % 2 for i in range(g.m)])
        assert valuations(g)["a"] == acyclic_oracle(g)
        if g.is_connected():
            R = reliability(g)
            for p0 in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
                assert R.eval_exact(p0) == reliability_oracle(g, p0)


def test_flow_factor():
    for m in range(1, 5):
        _, rem = flow(clan_cyclic(2, m)).divmod((q - 1) * (q - 2))
        assert rem.is_zero()


def test_valuations_clan():
    v = valuations(clan_cyclic(2, 2), s=(1, 2))
    assert v["N_ST"] == 72
    assert v["a"] == v["a_s"][1] == acyclic_count(clan_cyclic(2, 2))
    assert v["N_SSG"] == 2 ** 10


def test_acyclic_sq2():
    for m in range(1, 4):
        assert acyclic_oracle(sq_strip(2, m + 1)) == 2 * 7 ** m


def test_guards():
    with pytest.raises(GuardError):
        chromatic_oracle(complete(11), 3)
    with pytest.raises(ValueError):
        reliability(circuit(3).disjoint_union(circuit(3)))
