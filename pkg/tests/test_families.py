from __future__ import annotations

import pytest

from tuttekit.families import (build, circuit, clan_cyclic, clan_cyclic_twisted, clan_identity,
                               complete, faces, parse_family, sq_strip, tri_strip)
from tuttekit.tutte import tutte_dc


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_clan_sizes_and_regularity(r, m):
    g = clan_cyclic(r, m)
    assert g.n == r * m
    assert g.m == m * (r * (r - 1) // 2 + r * r)
    assert set(g.degrees()) == {3 * r - 1}
    h = clan_identity(r, m)
    assert h.m == m * r * (r + 1) // 2
    assert set(h.degrees()) == {r + 1}


def test_small_m_folds_to_loops():
    g = clan_cyclic(2, 1)
    assert (g.n, g.m, g.loops()) == (2, 5, 2)


@pytest.mark.parametrize("r,m", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_twist_gives_the_same_graph(r, m):
    assert tutte_dc(clan_cyclic(r, m)).polynomial == tutte_dc(clan_cyclic_twisted(r, m)).polynomial


def test_circuit_is_clan_r1():
    assert circuit(3).canonical_key() == clan_cyclic(1, 3).canonical_key()


def test_strip_sizes():
    g = sq_strip(3, 4, "F", "P")
    assert (g.n, g.m) == (12, 4 * 2 + 4 * 3)
    t = tri_strip(2, 3, "F", "F")
    assert (t.n, t.m) == (6, 3 + 2 * 2 + 2)
    assert faces(5, "free") == 4 and faces(5, "periodic") == 5
    with pytest.raises(ValueError):
        sq_strip(2, 3, "T", "F")


def test_spec_language():
    assert build("clan:jn:r=3,m=4") == clan_cyclic(3, 4)
    assert build("clan:id:r=2,m=6") == clan_identity(2, 6)
    assert build("sq:Ly=2,Lx=5,BCy=F,BCx=P") == sq_strip(2, 5, "free", "periodic")
    assert build("tri:Ly=2,Lx=4,BCy=F,BCx=T") == tri_strip(2, 4, "free", "twisted")
    assert build("circuit:m=7") == circuit(7)
    assert build("complete:r=4") == complete(4)
    assert build("tree:n=5").m == 4
    assert parse_family("clan:jn:r=3,m=4").params == {"r": 3, "m": 4}


@pytest.mark.parametrize("bad", ["clan:xx:r=1", "hex:Ly=2", "circuit:m=x", "sq:Ly=2,BCy=Q", "clan:jn:r"])
def test_spec_errors(bad):
    with pytest.raises(ValueError):
        build(bad)
