from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from tuttekit.polynomial import BiPoly, UniPoly, newton_power_sums, power_sums, residual, roots


def test_bipoly_ring():
    x, y = BiPoly.gens()
    p = (x + y) ** 3
    assert p.coeff(2, 1) == 3 and p.coeff(0, 3) == 1
    assert (p - p).is_zero()
    assert p.eval_exact(Fraction(1, 2), 2) == Fraction(125, 8)


def test_bipoly_text_roundtrip():
    p = BiPoly.parse("x^3 + 2*x*y - 7*y^2 + 5")
    assert BiPoly.parse(p.to_str()) == p
    assert BiPoly.from_json(p.to_json()) == p


def test_shift():
    x, y = BiPoly.gens()
    p = x * y + x
    # coefficients in X = x-1, Y = y-1
    assert p.shift(1, 1).eval_exact(0, 0) == p.eval_exact(1, 1)


def test_unipoly_divmod_gcd():
    q = UniPoly.x("q")
    a = (q - 1) ** 2 * (q + 2)
    b = (q - 1) * (q - 3)
    assert a.gcd(b) == q - 1
    quo, rem = a.divmod(q - 1)
    assert rem.is_zero() and quo * (q - 1) == a


def test_squarefree_factors():
    q = UniPoly.x("q")
    p = (q - 1) ** 3 * (q - 2) * (q ** 2 + 1) ** 2
    fs = dict((f.to_str(), k) for f, k in p.squarefree_factors())
    assert fs == {"q - 2": 1, "q^2 + 1": 2, "q - 1": 3}


def test_roots_exact_multiplicity():
    q = UniPoly.x("q")
    z = roots((q - 1) ** 3 * (q - 2))
    assert z == [1, 1, 1, 2]


def test_roots_match_numpy():
    rng = np.random.default_rng(3)
    c = rng.normal(size=12) + 1j * rng.normal(size=12)
    z = np.array(roots(c))
    ref = np.roots(c[::-1])
    d = np.abs(z[:, None] - ref[None, :]).min(axis=1)
    assert d.max() < 1e-9


def test_roots_wilkinson_like():
    q = UniPoly.x("q")
    p = UniPoly.const(1, "q")
    for k in range(1, 21):
        p = p * (q - k)
    z = np.array(roots(p))
    assert np.allclose(z.real, np.arange(1, 21), atol=1e-10)
    assert np.abs(z.imag).max() == 0.0


def test_roots_conjugate_pairs():
    p = UniPoly.parse("q^6 - 3*q^5 + 7*q^4 - q^2 + 11", "q")
    z = np.array(roots(p))
    assert np.abs(np.sort_complex(z) - np.sort_complex(np.conj(z))).max() < 1e-12
    assert max(residual(p, v) for v in z) < 1e-14


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        roots(UniPoly([], "q"))


def test_power_sums():
    # roots 2, 3, 5
    q = UniPoly.x("q")
    p = (q - 2) * (q - 3) * (q - 5)
    for m in range(1, 7):
        assert power_sums(p, m) == 2 ** m + 3 ** m + 5 ** m
    ps = newton_power_sums([-10, 31, -30], 4)
    assert ps == [3] + [2 ** k + 3 ** k + 5 ** k for k in range(1, 5)]
