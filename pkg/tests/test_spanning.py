from __future__ import annotations

import math

import numpy as np
import pytest

from tuttekit import spanning
from tuttekit.families import circuit, clan_cyclic, clan_identity, complete
from tuttekit.verify import TABLE4, TABLE5


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_cayley(n):
    assert spanning.kirchhoff_count(complete(n)) == n ** (n - 2)


def test_disconnected_and_cycle():
    assert spanning.kirchhoff_count(circuit(3).disjoint_union(circuit(3))) == 0
    assert spanning.kirchhoff_count(circuit(7)) == 7


@pytest.mark.parametrize("r", [1, 2, 3, 4])
@pytest.mark.parametrize("m", range(1, 7))
def test_closed_forms(r, m):
    assert spanning.nst_clan_jn(r, m) == spanning.kirchhoff_count(clan_cyclic(r, m))
    assert spanning.nst_clan_id(r, m) == spanning.kirchhoff_count(clan_identity(r, m))


def test_examples():
    assert spanning.nst_clan_jn(2, 3) == 1296
    assert spanning.nst_clan_jn(2, 2) == 72


@pytest.mark.parametrize("r,m", [(2, 4), (3, 3), (3, 5)])
def test_laplacian_spectra(r, m):
    got = spanning.laplacian_spectrum(clan_cyclic(r, m))
    assert np.allclose(got, spanning.predicted_spectrum_jn(r, m), atol=1e-8)
    got = spanning.laplacian_spectrum(clan_identity(r, m))
    assert np.allclose(got, spanning.predicted_spectrum_id(r, m), atol=1e-8)


def test_eigen_route():
    g = clan_cyclic(3, 4)
    assert abs(spanning.eigen_count(g) / spanning.kirchhoff_count(g) - 1) < 1e-9


@pytest.mark.parametrize("family,table", [("jn", TABLE4), ("id", TABLE5)])
def test_tables(family, table):
    for rep in spanning.spanning_table(family):
        assert tuple(round(v, 3) for v in (rep.ez, rep.R1, rep.R2)) == table[rep.r]


def test_growth_matches_counts():
    # (N_ST)^(1/n) approaches e^z
    r, m = 3, 2000
    est = math.exp(math.log(spanning.nst_clan_jn(r, m)) / (r * m))
    assert abs(est - spanning.growth_rate("jn", r)) < 0.01


def test_c_delta_guard():
    with pytest.raises(ValueError):
        spanning.c_delta(2)
