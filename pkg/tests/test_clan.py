from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from tuttekit import clan
from tuttekit.families import clan_cyclic
from tuttekit.specializations import chromatic, flow, reliability
from tuttekit.tutte import potts, tutte_dc
from tuttekit.verify import TABLE1, TABLE1_TOTALS


@pytest.mark.parametrize("r", range(1, 9))
def test_structure_rows(r):
    sc = clan.structure_counts(r)
    assert sc.counts == TABLE1[r] and sc.total == TABLE1_TOTALS[r]


@pytest.mark.parametrize("r", range(1, 13))
def test_structure_routes_and_identity(r):
    sc = clan.structure_counts(r)
    assert sc.agree
    assert sc.total == (r + 3) * 2 ** r // 4
    assert clan.coefficient_sum_check(r).is_zero()


@pytest.mark.parametrize("r,m", [(1, 4), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_full_polynomial(r, m):
    assert clan.tutte_clan_poly(r, m) == tutte_dc(clan_cyclic(r, m)).polynomial


@pytest.mark.parametrize("r", [1, 2, 3])
def test_special_points(r):
    T = tutte_dc(clan_cyclic(r, 2)).polynomial
    for x, y in [(1, 1), (1, 3), (2, 0), (Fraction(1, 2), 1), (0, 0)]:
        assert clan.tutte_clan_closed(r, 2, x, y) == T.eval_exact(x, y)


def test_unsupported_r():
    with pytest.raises(clan.UnsupportedSpectrum):
        clan.tutte_clan_closed(4, 2, 2, 3)


@pytest.mark.parametrize("r,m", [(1, 5), (2, 2), (3, 2), (3, 3), (4, 2)])
def test_chromatic_closed(r, m):
    assert clan.chromatic_clan_poly(r, m) == chromatic(clan_cyclic(r, m))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_flow_and_reliability_closed(m):
    g = clan_cyclic(2, m)
    assert clan.flow_clan_poly(2, m) == flow(g)
    assert clan.reliability_clan_poly(m) == reliability(g)


def test_potts_closed():
    Z = potts(clan_cyclic(2, 3)).polynomial
    for qv in [(3, Fraction(-1, 2)), (Fraction(5, 2), 2), (-1, -1)]:
        assert clan.potts_clan_closed(2, 3, *qv) == Z.eval_exact(*qv)
    zq = clan.potts_clan_poly_q(2, 3, Fraction(1, 3))
    assert zq.eval_exact(4) == Z.eval_exact(4, Fraction(1, 3))


def test_lambda_batch_matches_scalar():
    X = np.array([1.7 + 0.2j, -0.4 + 1j])
    Y = np.array([2.1 - 0.3j, 0.5 + 0.5j])
    lam, groups = clan.tutte_lambda_batch(3, X, Y)
    assert lam.shape == (2, len(groups))
    for k in range(2):
        ref = np.array(sum(clan.clan_lambda_values(3, X[k], Y[k]).values(), []), dtype=complex)
        d = np.abs(lam[k][:, None] - ref[None, :])
        assert d.min(axis=1).max() < 1e-9 and d.min(axis=0).max() < 1e-9


def test_chromatic_lambdas():
    q = 2.5 + 1j
    lam, _ = clan.chromatic_lambda_batch(3, np.array([q]))
    for d in range(4):
        assert abs(lam[0][d] - complex(clan.chromatic_lambda(3, d, q))) < 1e-12
