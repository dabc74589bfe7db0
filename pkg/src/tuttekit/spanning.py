"""Spanning-tree counts: Kirchhoff determinants, clan closed forms, growth rates."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def bareiss_det(M):
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def kirchhoff_count(g):
    """Number of spanning trees: any cofactor of the Laplacian.

    Disconnected graphs give 0 (the determinant vanishes).
    """
    if g.n <= 1:
        return 1
    Q = g.laplacian()
    reduced = [row[1:] for row in Q[1:]]
    return bareiss_det(reduced)


def nst_clan_jn(r, m):
    """3^((r-1)m) r^(rm-2) m."""
    if r < 1 or m < 1:
        raise ValueError("r, m >= 1")
    if r == 1:
        return m
    return 3 ** ((r - 1) * m) * r ** (r * m - 2) * m


def _lucas(r, k):
    """(u_k, V_k) for u_{j+1} = (r+2)u_j - u_{j-1}, u_0 = 0, u_1 = 1 and V_0 = 2, V_1 = r+2.

    u_k = (w^k - w^-k)/(w - w^-1) and V_k = w^k + w^-k with w + 1/w = r + 2.
    """
    s = r + 2
    u0, u1 = 0, 1
    v0, v1 = 2, s
    for _ in range(k):
        u0, u1 = u1, s * u1 - u0
        v0, v1 = v1, s * v1 - v0
    return u0, v0


def nst_clan_id(r, m):
    """Spanning trees of the bracelet: even m uses (r+4) u_{m/2}^2, odd m uses (V_m - 2)/r."""
    if r < 1 or m < 1:
        raise ValueError("r, m >= 1")
    if r == 1:
        return m
    if m % 2 == 0:
        u, _ = _lucas(r, m // 2)
        inner = (r + 4) * u * u
    else:
        _, V = _lucas(r, m)
        inner, rem = divmod(V - 2, r)
        assert rem == 0
    return m * r ** (r - 2) * inner ** (r - 1)


def eigen_count(g):
    """Numeric cross-check: (1/n) * product of non-zero Laplacian eigenvalues."""
    Q = np.array(g.laplacian(), dtype=float)
    ev = np.sort(np.linalg.eigvalsh(Q))
    return float(np.prod(ev[1:]) / g.n)


def laplacian_spectrum(g):
    return np.sort(np.linalg.eigvalsh(np.array(g.laplacian(), dtype=float)))


def predicted_spectrum_jn(r, m):
    vals = [2 * r * (1 - math.cos(2 * math.pi * j / m)) for j in range(m)]
    vals += [3.0 * r] * ((r - 1) * m)
    return np.sort(np.array(vals))


def predicted_spectrum_id(r, m):
    base = [2 * (1 - math.cos(2 * math.pi * j / m)) for j in range(m)]
    vals = base + [r + b for b in base for _ in range(r - 1)]
    return np.sort(np.array(vals))


# ------------------------------------------------------------ growth rates

def _omega(r):
    return (r + 2 + math.sqrt(r * (r + 4))) / 2


def growth_rate(family, r):
    if family == "jn":
        return 3 ** (1 - 1 / r) * r
    if family == "id":
        return _omega(r) ** (1 - 1 / r)
    raise ValueError("family must be 'jn' or 'id'")


def degree(family, r):
    return 3 * r - 1 if family == "jn" else r + 1


def c_delta(D):
    """McKay-type bound (D-1)^(D-1) / [D(D-2)]^(D/2-1)."""
    if D < 3:
        raise ValueError("C_Delta needs Delta >= 3")
    return math.exp((D - 1) * math.log(D - 1) - (D / 2 - 1) * math.log(D * (D - 2)))


@dataclass(frozen=True)
class GrowthReport:
    family: str
    r: int
    ez: float
    delta: int
    c_delta: float
    R1: float
    R2: float

    def row(self, digits=3):
        return [self.r, f"{self.ez:.{digits}f}", f"{self.R1:.{digits}f}", f"{self.R2:.{digits}f}"]


def growth_and_bounds(family, r):
    if r < 2:
        raise ValueError("r >= 2")
    ez = growth_rate(family, r)
    D = degree(family, r)
    C = c_delta(D)
    return GrowthReport(family, r, ez, D, C, ez / D, ez / C)


def spanning_table(family, rs=range(2, 11)):
    return [growth_and_bounds(family, r) for r in rs]
