from __future__ import annotations

import math
from fractions import Fraction

import pytest

from tuttekit import asymptotics as asy
from tuttekit import clan
from tuttekit.families import clan_cyclic
from tuttekit.specializations import acyclic_count, acyclic_oracle


def test_fibonacci():
    seq = [1, 1]
    for _ in range(12):
        seq.append(seq[-1] + seq[-2])
    fit = asy.fit_recurrence(seq, 4)
    assert fit.order == 2 and fit.coeffs == [1, 1]
    assert fit.predict(20)[-1] == 6765
    z, tie = fit.dominant()
    assert abs(z - (1 + math.sqrt(5)) / 2) < 1e-12 and not tie


def test_order_exceeded_and_short_input():
    seq = [Fraction(1, k * k + 1) for k in range(10)]
    assert asy.fit_recurrence(seq, 3).status == "order exceeded"
    with pytest.raises(ValueError):
        asy.fit_recurrence([1, 2, 3], 3)


def test_sq2_periodic_sequence():
    seq = [asy.acyclic_strip_count("sq", 2, "periodic", m) for m in range(1, 11)]
    assert seq[1] == 14
    fit = asy.fit_recurrence(seq, 4)
    assert fit.order == 4
    assert sorted(round(z.real) for z in fit.roots()) == [1, 2, 4, 7]


@pytest.mark.parametrize("r,order", [(1, 2), (2, 5)])
def test_clan_recurrence_order(r, order):
    x, y = asy.GENERIC_POINTS[1]
    seq = clan.tutte_clan_sequence(r, x, y, 16)
    assert asy.fit_recurrence(seq, 6).order == order


def test_strip_sequence_is_free_free():
    seq = asy.strip_acyclic_sequence("sq", 2, "free", 4)
    assert seq == [2, 14, 98, 686]  # Lx = 1 is a single edge


@pytest.mark.parametrize("key", asy.catalog_entries())
def test_catalog_rounds_to_printed(key):
    v = asy.alpha_closed_form(*key)
    assert round(v.alpha, 3) == pytest.approx(asy.printed_alpha(*key), abs=1e-12)
    assert v.route in ("closed-form", "tabulated")


@pytest.mark.parametrize("key", [("sq", 4, "periodic"), ("tri", 4, "free"), ("tri", 4, "periodic")])
def test_fit_matches_closed_form(key):
    assert abs(asy.alpha_strip(*key).alpha - asy.alpha_closed_form(*key).alpha) < 1e-9


def test_unknown_catalog_entry():
    with pytest.raises(KeyError):
        asy.alpha_closed_form("sq", 2, "periodic")


def test_tables_shape():
    for lat in ("sq", "tri"):
        assert asy.check_monotone(asy.alpha_table(lat)) == (True, True)
    assert asy.ALPHA_SQ_LOWER < asy.alpha_closed_form("sq", 8, "free").alpha
    assert asy.alpha_table("sq")[-1].alpha < asy.ALPHA_SQ_UPPER


@pytest.mark.parametrize("family", asy.FORMULA_FAMILIES)
def test_formula_families(family):
    assert asy.acyclic_formula_check(family, range(1, 5)).passed


def test_cubic_sign_reading():
    assert asy.check_cubic_sign(range(1, 4)) == {True: True, False: False}


def test_clan_acyclic():
    for m in (1, 2):
        assert asy.acyclic_clan_formula(2, m) == acyclic_oracle(clan_cyclic(2, m))
    for r, m in [(2, 3), (2, 4), (3, 2), (3, 3)]:
        assert asy.acyclic_clan_formula(r, m) == acyclic_count(clan_cyclic(r, m))
    assert abs(asy.alpha_clan(2).alpha - math.sqrt(12)) < 1e-12
    # (2r)_(r)^(1/r) / r tends to 4/e
    assert abs(asy.alpha_clan(400).alpha / 400 - 4 / math.e) < 0.01
