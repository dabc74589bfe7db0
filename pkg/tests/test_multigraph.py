from __future__ import annotations

import pytest

from tuttekit.families import circuit, complete, random_corpus
from tuttekit.multigraph import Multigraph


def test_sizes_and_loops():
    g = Multigraph(3, [(0, 1), (1, 0), (2, 2), (1, 2)])
    assert (g.n, g.m, g.loops()) == (3, 4, 1)
    assert g.edges[1] == (0, 1)  # stored with u <= v
    assert g.degrees() == [2, 3, 3]
    assert g.components() == 1 and g.rank() == 2 and g.corank() == 2


def test_bad_endpoint():
    with pytest.raises(ValueError):
        Multigraph(2, [(0, 2)])


def test_delete_contract():
    g = circuit(4)
    d = g.delete_edge(0)
    assert d.m == 3 and d.is_connected()
    c = g.contract_edge(0)
    assert (c.n, c.m) == (3, 3)
    with pytest.raises(ValueError):
        Multigraph(1, [(0, 0)]).contract_edge(0)
    with pytest.raises(IndexError):
        g.delete_edge(7)


def test_bridges():
    g = Multigraph(3, [(0, 1), (1, 2), (1, 2), (0, 0)])
    assert g.is_bridge(0)
    assert not g.is_bridge(1)
    assert not g.is_bridge(3)


def test_laplacian_ignores_loops():
    g = Multigraph(2, [(0, 1), (0, 1), (1, 1)])
    assert g.laplacian() == [[2, -2], [-2, 2]]


def test_canonical_key_is_label_invariant():
    for g in random_corpus(30, seed=11):
        perm = list(range(g.n))[::-1]
        assert g.canonical_key() == g.relabel(perm).canonical_key()


def test_canonical_key_separates():
    assert circuit(4).canonical_key() != complete(4).canonical_key()
    a = Multigraph(4, [(0, 1), (1, 2), (2, 3)])
    b = Multigraph(4, [(0, 1), (0, 2), (0, 3)])
    assert a.canonical_key() != b.canonical_key()


def test_edge_list_roundtrip():
    g = Multigraph(4, [(0, 1), (1, 1), (2, 3), (2, 3)])
    h = Multigraph.from_edge_list(g.to_edge_list())
    assert h == g
    with pytest.raises(ValueError):
        Multigraph.from_edge_list("3 2\n0 1\n")


def test_components_split():
    g = circuit(3).disjoint_union(Multigraph(2, [(0, 1)]))
    parts = g.induced_components()
    assert sorted(p.n for p, _ in parts) == [2, 3]
