"""Closed forms for cyclic clan graphs (rings of K_r blocks, adjacent blocks joined).

T(G,x,y) = 1/(x-1) * sum_d mu_d * sum_j lambda_{r,d,j}^m with
mu_0 = 1, mu_d = C(q,d) - C(q,d-1) and q = (x-1)(y-1).  For r <= 3 the
lambda's are known: explicit values, square-root pairs, or roots of the
cubic and quartic below.  Block sums are Newton power sums of the defining
monic polynomials, so exact inputs give exact outputs with no root
extraction.  Chromatic spectra are known for every r.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .polynomial import BiPoly, UniPoly, newton_power_sums, roots


class UnsupportedSpectrum(ValueError):
    pass


# ---------------------------------------------------------- factorials, mu

def falling(q, r):
    """q (q-1) ... (q-r+1); ring-generic."""
    acc = 1
    for s in range(r):
        acc = acc * (q - s)
    return acc


def rising(q, r):
    acc = 1
    for s in range(r):
        acc = acc * (q + s)
    return acc


def _scale(v, f):
    if isinstance(v, (int, Fraction)):
        return Fraction(v) * f
    return v * f


def binom(q, d):
    if d < 0:
        return 0
    return _scale(falling(q, d), Fraction(1, math.factorial(d)))


def mu_coeff(d, q):
    """mu_0 = 1, mu_d = C(q,d) - C(q,d-1)."""
    if d == 0:
        return 1
    v = binom(q, d) - binom(q, d - 1)
    return Fraction(v) if isinstance(v, (int, Fraction)) else v


# ------------------------------------------------------- structure counts

def _row_recursive(r):
    row = [1, 1]
    for rr in range(1, r):
        new = [2 ** rr, 2 ** rr] + [row[d] + row[d - 1] for d in range(2, rr + 1)] + [1]
        row = new
    return row


def _row_closed(r):
    out = []
    for d in range(r + 1):
        if d == 0:
            out.append(2 ** (r - 1))
        else:
            a = 2 ** (r - 1) - sum(math.comb(r - 1, j - 1) for j in range(1, d))
            b = sum(math.comb(r - 1, j - 1) for j in range(1, r - d + 2))
            if a != b:
                raise AssertionError(f"closed forms disagree at r={r}, d={d}")
            out.append(a)
    return out


@dataclass(frozen=True)
class StructureCounts:
    r: int
    counts: tuple
    total: int
    closed_counts: tuple
    closed_total: int

    @property
    def agree(self):
        return self.counts == self.closed_counts and self.total == self.closed_total


def structure_counts(r):
    """n_T(r,d) for d = 0..r and N_{T,r,lambda}, by recursion and by closed form."""
    if r < 1:
        raise ValueError("r >= 1")
    row = tuple(_row_recursive(r))
    closed = tuple(_row_closed(r))
    total_closed = (r + 3) * 2 ** r // 4
    return StructureCounts(r, row, sum(row), closed, total_closed)


def coefficient_sum_check(r):
    """sum_d n_T(r,d) mu_d(q) - q^(r)/r! as a UniPoly (zero when the identity holds)."""
    q = UniPoly.x("q")
    row = structure_counts(r).counts
    lhs = UniPoly([], "q")
    for d, n in enumerate(row):
        lhs = lhs + mu_coeff(d, q) * n
    rhs = rising(q, r) * Fraction(1, math.factorial(r))
    return lhs - rhs


# ------------------------------------------------------- Tutte spectra data
#
# Square-root pairs are (scale/2)(S +- sqrt(R)); the explicit quartic and
# cubic coefficients are transcribed verbatim from the source tables.

_S20 = "y^3+2y^2+3y+x^2+3x+2"
_R20 = ("4+12x+12y+22xy+13x^2+21y^2+6x^3+20y^3+16xy^2"
        "+10x^2y+x^4+10y^4-4x^2y^2-2y^3x+4y^5-2x^2y^3+y^6")
_S21 = "y^3+2y^2+3y+2x+4"
_R21 = "16+16x+32y+4x^2+12xy+33y^2+20y^3-4xy^3+10y^4+4y^5+y^6"
_S32 = "y^3+3y^2+2x+6y+8"
_R32 = "64+32x+112y+4x^2+24xy+100y^2+4xy^2+52y^3-4xy^3+21y^4+6y^5+y^6"
_L301 = "3y^2(y+1)"

_B = {
    "b43": "-(y^9+3y^8+6y^7+10y^6+15y^5+3xy^3+21y^4+6xy^2+31y^3+3x^2+9xy+39y^2+21x+45y+36)",
    "b42": ("3y(xy^11+4xy^10+y^11+x^2y^8+10xy^9+5y^10+3x^2y^7+23xy^8+15y^9+6x^2y^6+39xy^7"
            "+31y^8+10x^2y^5+53xy^6+42y^7+14x^2y^4+62xy^5+41y^6+3x^3y^2+17x^2y^3+65xy^4"
            "+28y^5+3x^3y+30x^2y^2+66xy^3+8y^4+21x^2y+67xy^2-13y^3-6x^2+6xy-38y^2-30x-66y-36)"),
    "b41": ("-9y^3(y+1)(xy^11+x^3y^8+5xy^10+2x^3y^7+4x^2y^8+16xy^9+2x^3y^6+7x^2y^7+38xy^8"
            "+x^3y^5+7x^2y^6+57xy^7-2y^8+9x^2y^5+72xy^6-11y^7+14x^2y^4+81xy^5-23y^6+3x^3y^2"
            "+20x^2y^3+73xy^4-41y^5+6x^3y+26x^2y^2+44xy^3-65y^4-3x^3+3x^2y-84y^3-18x^2-48xy"
            "-85y^2-33x-61y-18)"),
    "b40": ("27y^6(y+1)^2(y^2+y+1)(xy-1)(x^2y^4+2x^2y^3+2xy^4-x^2y^2-3xy^3-y^4-5xy^2"
            "-3y^3+2x+4y+2)"),
    "b32": ("-(y^9+3y^8+6y^7+10y^6+15y^5+3xy^3+21y^4+x^3+6xy^2+28y^3+9x^2+16xy+36y^2"
            "+26x+38y+24)"),
    "b31": ("y(3xy^11+x^3y^8+12xy^10+3x^3y^7+9x^2y^8+36xy^9+3y^10+6x^3y^6+27x^2y^7+90xy^8"
            "+12y^9+10x^3y^5+54x^2y^6+153xy^7+17y^8+15x^3y^4+84x^2y^5+194xy^6-6y^7+3x^4y^2"
            "+21x^3y^3+102x^2y^4+184xy^5-62y^6+6x^4y+40x^3y^2+96x^2y^3+117xy^4-134y^5-3x^4"
            "+18x^3y+75x^2y^2+16xy^3-192y^4-24x^3-36x^2y-85xy^2-211y^3-69x^2-156xy-189y^2"
            "-84x-120y-36)"),
    "b30": ("-3y^4(y+1)(x^4y^7+3x^4y^6+6x^3y^7+3x^4y^5+7x^3y^6+3x^2y^7+x^4y^4-6x^3y^5"
            "-15x^2y^6-4xy^7-3x^4y^3-15x^3y^4-31x^2y^5-12xy^6-11x^3y^3-14x^2y^4+7xy^5+5y^6"
            "+x^4y+9x^3y^2+21x^2y^3+33xy^4+9y^5+6x^3y+25x^2y^2+28xy^3+y^4-2x^3-x^2y-4xy^2"
            "-11y^3-6x^2-14xy-12y^2-4x-4y)"),
}


@dataclass(frozen=True)
class Part:
    """One piece of a block: ``explicit`` value, or monic ``poly`` coefficients
    [c1..cn] of xi^n + c1 xi^(n-1) + ... + cn, optionally tagged as a
    square-root pair (S, R, scale) for numeric evaluation."""
    kind: str
    coeffs: tuple
    pair: tuple = None

    @property
    def size(self):
        return 1 if self.kind == "explicit" else len(self.coeffs)


def _P(s):
    return BiPoly.parse(s, ("x", "y"))


def _pair(S, R, scale=1):
    S, R = _P(S), _P(R)
    prod = (S * S - R) / 4
    if not prod.is_integral():
        raise AssertionError("square-root pair product is not integral")
    c1 = -(S * scale)
    c2 = prod * (scale * scale)
    return Part("poly", (c1, c2), pair=(S, R, scale))


@lru_cache(maxsize=None)
def tutte_spectrum(r):
    """List over d of lists of Parts (BiPoly data in x, y)."""
    x, y = BiPoly.gens()
    one = BiPoly.const(1)
    if r == 1:
        return ((Part("explicit", (x,)),), (Part("explicit", (one,)),))
    if r == 2:
        return ((_pair(_S20, _R20),), (_pair(_S21, _R21),), (Part("explicit", (one * 2,)),))
    if r == 3:
        L = _P(_L301)
        B = {k: _P(v) for k, v in _B.items()}
        return (
            (Part("explicit", (L,)), Part("poly", (B["b32"], B["b31"], B["b30"]))),
            (Part("poly", (B["b43"], B["b42"], B["b41"], B["b40"])),),
            (_pair(_S32, _R32, 3), Part("explicit", (L,))),
            (Part("explicit", (one * 6,)),),
        )
    raise UnsupportedSpectrum(f"Tutte spectrum known only for r in {{1,2,3}}, got r={r}")


@dataclass(frozen=True)
class ClanSpectrum:
    r: int
    blocks: tuple

    @property
    def multiplicities(self):
        return tuple(sum(p.size for p in blk) for blk in self.blocks)

    def mu(self, d, q):
        return mu_coeff(d, q)


def clan_spectrum(r):
    return ClanSpectrum(r, tutte_spectrum(r))


def _ev(b, x, y):
    v = b.eval_ring(x, y)
    return v


def _block_sums(blocks, x, y, M):
    """sums[d][m] = sum_j lambda_{d,j}^m for m = 0..M."""
    out = []
    for blk in blocks:
        acc = [0] * (M + 1)
        for part in blk:
            if part.kind == "explicit":
                lam = _ev(part.coeffs[0], x, y)
                pw = 1
                for k in range(M + 1):
                    acc[k] = acc[k] + pw
                    pw = pw * lam
            else:
                cs = [_ev(c, x, y) for c in part.coeffs]
                ps = newton_power_sums(cs, M)
                for k in range(M + 1):
                    acc[k] = acc[k] + ps[k]
        out.append(acc)
    return out


def _div_x_minus_1(N, x):
    if isinstance(N, BiPoly):
        return N.div_linear("x", 1)
    if isinstance(N, UniPoly):
        return N.exact_div(UniPoly([-1, 1], N.var))
    return Fraction(N) / (Fraction(x) - 1) if isinstance(x, (int, Fraction)) else N / (x - 1)


def _is_one(x):
    return isinstance(x, (int, Fraction)) and x == 1


def tutte_clan_sequence(r, x, y, M):
    """[T(clan_cyclic(r, m), x, y) for m = 1..M] from the closed form."""
    blocks = tutte_spectrum(r)
    if _is_one(x):
        X = UniPoly.x("x")
        seq = tutte_clan_sequence(r, X, y, M)
        return [s.eval_exact(1) if isinstance(s, UniPoly) else s for s in seq]
    q = (x - 1) * (y - 1)
    sums = _block_sums(blocks, x, y, M)
    mus = [mu_coeff(d, q) for d in range(len(blocks))]
    out = []
    for m in range(1, M + 1):
        N = 0
        for d, mu in enumerate(mus):
            N = N + mu * sums[d][m]
        out.append(_norm(_div_x_minus_1(N, x)))
    return out


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def tutte_clan_closed(r, m, x, y):
    """T(clan_cyclic(r,m), x, y) from the spectrum.

    ``x``, ``y`` may be ints, Fractions, or ring elements (BiPoly gens give
    the full polynomial).  At x = 1 the numerator is built as a polynomial
    in x and divided by (x - 1) exactly.
    """
    if r not in (1, 2, 3):
        raise UnsupportedSpectrum(f"Tutte spectrum known only for r in {{1,2,3}}, got r={r}")
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
    if isinstance(y, (int, Fraction)):
        y = Fraction(y)
    return tutte_clan_sequence(r, x, y, m)[m - 1]


def tutte_clan_poly(r, m):
    x, y = BiPoly.gens()
    return tutte_clan_closed(r, m, x, y)


# ------------------------------------------------------- numeric lambdas

def _c(v):
    return complex(v)


def clan_lambda_values(r, x, y):
    """{d: [lambda_{r,d,j}]} as complex numbers at complex (x, y).

    Square-root pairs use the principal root, '+' first; cubic and quartic
    blocks go through :func:`tuttekit.polynomial.roots`.
    """
    out = {}
    for d, blk in enumerate(tutte_spectrum(r)):
        vals = []
        for part in blk:
            if part.kind == "explicit":
                vals.append(part.coeffs[0].eval_complex(x, y))
            elif part.pair is not None:
                S, R, sc = part.pair
                s = S.eval_complex(x, y)
                rt = complex(np.sqrt(complex(R.eval_complex(x, y))))
                vals += [sc * (s + rt) / 2, sc * (s - rt) / 2]
            else:
                cs = [c.eval_complex(x, y) for c in part.coeffs]
                vals += roots(list(reversed([1] + cs)))
        out[d] = vals
    return out


def _eval_array(b, X, Y):
    acc = np.zeros(np.broadcast(X, Y).shape, dtype=complex)
    xp = {0: np.ones_like(acc)}
    yp = {0: np.ones_like(acc)}
    for (i, j), c in b.c.items():
        if i not in xp:
            xp[i] = X ** i
        if j not in yp:
            yp[j] = Y ** j
        acc = acc + float(c) * xp[i] * yp[j]
    return acc


def tutte_lambda_batch(r, X, Y):
    """Vectorised spectrum on arrays of (x, y).

    Returns (lam, groups): ``lam`` has shape (N, K); ``groups`` lists, per
    column, an id shared by columns whose values may swap between nearby
    points (roots of one polynomial).  Coincident explicit values shared by
    two blocks appear once.
    """
    X = np.asarray(X, dtype=complex).ravel()
    Y = np.broadcast_to(np.asarray(Y, dtype=complex), X.shape).ravel()
    cols, groups = [], []
    seen_explicit = set()
    gid = 0
    for d, blk in enumerate(tutte_spectrum(r)):
        for part in blk:
            if part.kind == "explicit":
                key = part.coeffs[0]
                if key in seen_explicit:
                    continue
                seen_explicit.add(key)
                cols.append(_eval_array(key, X, Y))
                groups.append(gid)
            else:
                cs = [_eval_array(c, X, Y) for c in part.coeffs]
                C = np.stack([np.ones_like(X)] + cs, axis=1)
                rts = kernels.batched_roots(C)
                for k in range(rts.shape[1]):
                    cols.append(rts[:, k])
                    groups.append(gid)
            gid += 1
    return np.stack(cols, axis=1), np.array(groups)


def potts_clan_closed(r, m, q, v):
    """Z(clan_cyclic(r,m), q, v) = v^(rm) sum_d mu_d(q) sum_j lambda_{T,r,d,j}^m.

    Evaluated at x = 1 + q/v, y = 1 + v; ``q`` may be a UniPoly, so a
    fixed nonzero ``v`` gives the exact polynomial in q.
    """
    if v == 0:
        raise ValueError("v = 0 leaves Z = q^n; the Tutte variables are undefined")
    if isinstance(v, (int, Fraction)):
        v = Fraction(v)
    if isinstance(q, (int, Fraction)):
        q = Fraction(q)
    x = 1 + q * (1 / v)
    y = 1 + v
    blocks = tutte_spectrum(r)
    sums = _block_sums(blocks, x, y, m)
    N = 0
    for d in range(len(blocks)):
        N = N + mu_coeff(d, q) * sums[d][m]
    return _norm(N * v ** (r * m))


def potts_clan_poly_q(r, m, v):
    q = UniPoly.x("q")
    return UniPoly([], "q") + potts_clan_closed(r, m, q, v)


# --------------------------------------------------------------- chromatic

def chromatic_lambda(r, d, q):
    """(-1)^d r_(d) (q - r - d)_(r - d)."""
    return (-1) ** d * falling(r, d) * falling(q - r - d, r - d)


def chromatic_clan_closed(r, m, q):
    if r < 1 or m < 1:
        raise ValueError("r, m >= 1")
    if isinstance(q, (int, Fraction)):
        q = Fraction(q)
    total = 0
    for d in range(r + 1):
        total = total + mu_coeff(d, q) * chromatic_lambda(r, d, q) ** m
    return _norm(total)


def chromatic_clan_poly(r, m):
    q = UniPoly.x("q")
    return UniPoly([], "q") + chromatic_clan_closed(r, m, q)


def chromatic_lambda_batch(r, Q):
    Q = np.asarray(Q, dtype=complex).ravel()
    cols = [chromatic_lambda(r, d, Q) * np.ones_like(Q) for d in range(r + 1)]
    return np.stack(cols, axis=1), np.arange(r + 1)


# -------------------------------------------------------------------- flow

_F20_S = "(q-2)(q^2-3q+4)"
_F20_R = "(q-2)(q-3)(q^4-5q^3+14q^2-20q+12)"
_F21_S = "q^3-5q^2+10q-10"
_F21_R = "q^6-10q^5+45q^4-120q^3+208q^2-224q+116"


@lru_cache(maxsize=None)
def flow_spectrum_r2():
    """((S, R) pair for d=0, (S, R) for d=1, explicit -2 for d=2) as UniPolys in q."""
    U = lambda s: UniPoly.parse(s, "q")
    return (U(_F20_S), U(_F20_R)), (U(_F21_S), U(_F21_R)), -2


def _quad(S, R):
    prod = (S * S - R) * Fraction(1, 4)
    return [-S, prod]


def flow_clan_sequence(r, q, M):
    """[F(clan_cyclic(r, m), q) for m = 1..M]."""
    if isinstance(q, (int, Fraction)):
        q = Fraction(q)
    if r == 2:
        (s0, r0), (s1, r1), l2 = flow_spectrum_r2()
        ps = []
        for S, R in ((s0, r0), (s1, r1)):
            qs = [c.eval_ring(q) for c in _quad(S, R)]
            ps.append(newton_power_sums(qs, M))
        sums = ps + [[l2 ** k for k in range(M + 1)]]
        mus = [mu_coeff(d, q) for d in range(3)]
        out = []
        for m in range(1, M + 1):
            v = 0
            for d in range(3):
                v = v + mus[d] * sums[d][m]
            out.append(_norm(v))
        return out
    if r in (1, 3):
        # generic route: lambda_F = (-1)^(3r(r-1)/2) lambda_T(0, 1-q)
        sign = (-1) ** (3 * r * (r - 1) // 2)
        blocks = tutte_spectrum(r)
        sums = _block_sums(blocks, 0, 1 - q, M)
        mus = [mu_coeff(d, q) for d in range(len(blocks))]
        out = []
        for m in range(1, M + 1):
            v = 0
            for d in range(len(blocks)):
                v = v + mus[d] * sums[d][m]
            out.append(_norm(v * sign ** m))
        return out
    raise UnsupportedSpectrum(f"flow spectrum available for r in {{1,2,3}}, got r={r}")


def flow_clan_closed(r, m, q):
    return flow_clan_sequence(r, q, m)[m - 1]


def flow_clan_poly(r, m):
    q = UniPoly.x("q")
    return UniPoly([], "q") + flow_clan_closed(r, m, q)


def flow_lambda_values(q):
    """{d: [lambda_{F,2,d,j}]} at complex q; principal sqrt, '+' first."""
    (s0, r0), (s1, r1), l2 = flow_spectrum_r2()
    out = {}
    for d, (S, R) in enumerate(((s0, r0), (s1, r1))):
        s = S.eval_complex(q)
        rt = complex(np.sqrt(complex(R.eval_complex(q))))
        out[d] = [(s + rt) / 2, (s - rt) / 2]
    out[2] = [complex(l2)]
    return out


def flow_lambda_batch(Q):
    Q = np.asarray(Q, dtype=complex).ravel()
    (s0, r0), (s1, r1), l2 = flow_spectrum_r2()
    cols = []
    for S, R in ((s0, r0), (s1, r1)):
        s = S.eval_numpy(Q)
        rt = np.sqrt(R.eval_numpy(Q))
        cols += [(s + rt) / 2, (s - rt) / 2]
    cols.append(np.full(Q.shape, complex(l2)))
    return np.stack(cols, axis=1), np.array([0, 0, 1, 1, 2])


# ------------------------------------------------------------- reliability

_A_S = "(3-2p)(4-6p+3p^2)"
_R2P = "36p^6-260p^5+793p^4-1308p^3+1236p^2-640p+144"
_D_E = "36-88p+69p^2-18p^3"
_A3 = "2(1-p)^3"


@lru_cache(maxsize=None)
def reliability_spectrum_r2():
    U = lambda s: UniPoly.parse(s, "p")
    return U(_A_S), U(_R2P), U(_D_E), U(_A3)


def reliability_clan_closed(r, m, p):
    """R(clan_cyclic(2, m), p).

    With alpha_{1,2} the roots of xi^2 - s xi + (s^2 - R_2p)/4, the pair
    enters only through A_k = alpha_1^k + alpha_2^k and
    U_k = (alpha_1^k - alpha_2^k)/(alpha_1 - alpha_2), both integer
    recurrences in s and the product, so the result is exact.
    """
    if r != 2:
        raise UnsupportedSpectrum("reliability spectrum available for r = 2 only")
    if m < 1:
        raise ValueError("m >= 1")
    if isinstance(p, (int, Fraction)):
        p = Fraction(p)
    S, R, E, A3 = (f.eval_ring(p) for f in reliability_spectrum_r2())
    P = (S * S - R) * Fraction(1, 4)
    A = newton_power_sums([-S, P], m)
    U = [0, 1]
    for _ in range(2, m + 1):
        U.append(S * U[-1] - P * U[-2])
    one_m = 1 - p
    B = A[m - 1] * Fraction(3, 2) + E * U[m - 1] * Fraction(1, 2)
    val = p ** (2 * m) * (A[m] - A3 ** m * Fraction(3, 2)) + p ** (2 * m - 1) * one_m ** 4 * B * m
    if isinstance(val, UniPoly):
        return val
    return _norm(val)


def reliability_clan_poly(m):
    p = UniPoly.x("p")
    return UniPoly([], "p") + reliability_clan_closed(2, m, p)


def reliability_alphas(p):
    """(alpha_21, alpha_22, alpha_23) at complex p; principal sqrt."""
    S, R, E, A3 = reliability_spectrum_r2()
    s = S.eval_complex(p)
    rt = complex(np.sqrt(complex(R.eval_complex(p))))
    return [(s + rt) / 2, (s - rt) / 2, A3.eval_complex(p)]


def reliability_alpha_batch(Pz):
    Pz = np.asarray(Pz, dtype=complex).ravel()
    S, R, E, A3 = reliability_spectrum_r2()
    s = S.eval_numpy(Pz)
    rt = np.sqrt(R.eval_numpy(Pz))
    return np.stack([(s + rt) / 2, (s - rt) / 2, A3.eval_numpy(Pz)], axis=1), np.array([0, 0, 1])
