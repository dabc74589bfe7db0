"""Zeros for finite m and the m -> infinity accumulation loci.

The locus is where two distinct lambda terms tie in modulus while
dominating all others.  It is traced on a grid: along every grid edge the
dominant lambda at one end is followed to the other end (nearest value
among the roots of the same polynomial, which survives branch cuts), and
an edge whose far end is dominated by a different term carries a crossing,
located by bisection on |lambda_a| - |lambda_b|.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import clan
from .families import parse_family
from .polynomial import UniPoly, roots
from .specializations import chromatic, flow, reliability
from .tutte import GuardError, potts

log = logging.getLogger(__name__)

MAX_DEGREE = 400
TIE_REL = 1e-13


# ---------------------------------------------------------------- point sets

@dataclass
class LocusPointSet:
    points: np.ndarray
    plane: str  # q | u | v | p
    kind: str  # finite-m-zeros | equimodular-curve | closed-form-circle
    meta: dict = field(default_factory=dict)
    labels: list = field(default_factory=list)
    segments: list = field(default_factory=list)
    directions: np.ndarray | None = None  # edge direction through each crossing

    def __len__(self):
        return len(self.points)

    def conjugation_defect(self):
        """max over points of the distance from conj(z) to the set."""
        P = np.asarray(self.points, dtype=complex)
        if P.size == 0:
            return 0.0
        return float(np.max(nearest_distance(np.conj(P), P)))

    def rows(self):
        labels = self.labels or [""] * len(self.points)
        return [(z.real, z.imag, self.kind, lab) for z, lab in zip(self.points, labels)]

    def to_csv(self, fh=None, digits=10):
        out = fh or io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["re", "im", "kind", "label"])
        for re_, im_, kind, lab in self.rows():
            w.writerow([f"{re_:.{digits}g}", f"{im_:.{digits}g}", kind, lab])
        return out.getvalue() if fh is None else None

    def to_json(self, digits=10):
        r = lambda v: float(f"{v:.{digits}g}")
        return {
            "plane": self.plane,
            "kind": self.kind,
            "meta": {k: str(v) if isinstance(v, Fraction) else v for k, v in self.meta.items()},
            "points": [[r(z.real), r(z.imag)] for z in self.points],
            "labels": list(self.labels),
            "segments": [list(map(int, s)) for s in self.segments],
        }

    def to_gnuplot(self, digits=10):
        """Two-column text; polylines separated by blank lines."""
        P = self.points
        lines = []
        if self.segments:
            for a, b in self.segments:
                lines.append(f"{P[a].real:.{digits}g} {P[a].imag:.{digits}g}")
                lines.append(f"{P[b].real:.{digits}g} {P[b].imag:.{digits}g}")
                lines.append("")
        else:
            lines = [f"{z.real:.{digits}g} {z.imag:.{digits}g}" for z in P]
        return "\n".join(lines) + "\n"


def nearest_distance(A, B, chunk=2048):
    """For each point of A, the distance to the closest point of B."""
    A = np.asarray(A, dtype=complex).ravel()
    B = np.asarray(B, dtype=complex).ravel()
    out = np.empty(A.shape, dtype=float)
    for s in range(0, len(A), chunk):
        out[s:s + chunk] = np.min(np.abs(A[s:s + chunk, None] - B[None, :]), axis=1)
    return out


def hausdorff(A, B):
    if len(A) == 0 or len(B) == 0:
        return math.inf
    return float(max(nearest_distance(A, B).max(), nearest_distance(B, A).max()))


# ----------------------------------------------------------------- spectra

@dataclass
class Spectrum:
    """Vectorised lambda provider: ``fn(z_flat) -> (N, K)`` complex array.

    ``groups[k]`` tags columns that are roots of one polynomial (their
    order may permute between points); ``root`` is the per-vertex power
    (|lambda|^(1/root) is |W|, |phi|, |exp f| ...).
    """
    name: str
    fn: object
    groups: np.ndarray
    names: list
    root: int = 1

    def __call__(self, z):
        return self.fn(np.asarray(z, dtype=complex).ravel())


def chromatic_spectrum(r):
    fn = lambda Q: clan.chromatic_lambda_batch(r, Q)[0]
    return Spectrum(f"chromatic-clan-r{r}", fn, np.arange(r + 1),
                    [f"P,{r},{d}" for d in range(r + 1)], r)


def potts_spectrum(r, v):
    """Clan Potts lambdas in the q plane at fixed v (scaled by v^r)."""
    v = complex(v)
    _, groups = clan.tutte_lambda_batch(r, np.array([2.0]), np.array([2.0]))

    def fn(Q):
        lam, _ = clan.tutte_lambda_batch(r, 1 + Q / v, np.full(Q.shape, 1 + v))
        return lam * v ** r

    return Spectrum(f"potts-clan-r{r}-v{v.real:g}", fn, groups,
                    [f"T,{r},#{k}" for k in range(len(groups))], r)


def flow_spectrum(plane="q"):
    _, groups = clan.flow_lambda_batch(np.array([3.0]))
    names = ["F,2,0,1", "F,2,0,2", "F,2,1,1", "F,2,1,2", "F,2,2"]
    if plane == "u":
        fn = _flow_u
    else:
        fn = lambda Q: clan.flow_lambda_batch(Q)[0]
    return Spectrum(f"flow-clan-r2-{plane}", fn, groups, names, 2)


def _reversed(p, deg):
    """u^deg p(1/u) as a UniPoly in u."""
    cs = [p.coeff(i) for i in range(deg + 1)]
    return UniPoly(cs[::-1], "u")


@lru_cache(maxsize=None)
def _flow_u_polys():
    (s0, r0), (s1, r1), _ = clan.flow_spectrum_r2()
    return [(_reversed(S, 3), _reversed(R, 6)) for S, R in ((s0, r0), (s1, r1))]


def _flow_u(U):
    """u^3 lambda_F(1/u), computed from reversed polynomials (no cancellation near u = 0)."""
    cols = []
    for S, R in _flow_u_polys():
        s = S.eval_numpy(U)
        rt = np.sqrt(R.eval_numpy(U))
        cols += [(s + rt) / 2, (s - rt) / 2]
    cols.append(-2 * U ** 3)
    return np.stack(cols, axis=1)


def reliability_spectrum():
    fn = lambda P: clan.reliability_alpha_batch(P)[0]
    return Spectrum("reliability-clan-r2", fn, np.array([0, 0, 1]), ["a,2,1", "a,2,2", "a,2,3"], 2)


def circuit_spectrum(v):
    v = complex(v)
    fn = lambda Q: np.stack([Q + v, np.full(Q.shape, v)], axis=1)
    return Spectrum(f"circuit-v{v.real:g}", fn, np.array([0, 1]), ["q+v", "v"], 1)


# ------------------------------------------------------------ crossing engine

def _pick(lam, groups, gsel, target):
    """Value among columns of group ``gsel`` (per row) closest to ``target``."""
    mask = groups[None, :] == gsel[:, None]
    d = np.where(mask, np.abs(lam - target[:, None]), np.inf)
    return lam[np.arange(len(lam)), np.argmin(d, axis=1)]


def _edge_crossings(spec, A, B, LA, LB, refine=30):
    """Crossings on edges A->B given lambdas LA, LB at the ends.

    Returns (points, (ia, ib), mask) where ``mask`` flags edges carrying a
    crossing and ``ia``/``ib`` name the dominant column on each side.
    """
    g = spec.groups
    ok = np.all(np.isfinite(LA), axis=1) & np.all(np.isfinite(LB), axis=1)
    MA, MB = np.abs(LA), np.abs(LB)
    MA[~ok] = 0
    MB[~ok] = 0
    da = np.argmax(MA, axis=1)
    db = np.argmax(MB, axis=1)
    rows = np.arange(len(A))
    la_A = LA[rows, da]
    la_B = _pick(LB, g, g[da], la_A)
    cross = ok & (np.abs(la_B) < MB[rows, db] * (1 - TIE_REL))
    idx = np.nonzero(cross)[0]
    if idx.size == 0:
        return np.zeros(0, complex), (idx, idx), cross
    a0, b0 = A[idx], B[idx]
    ga, gb = g[da[idx]], g[db[idx]]
    aA, aB = la_A[idx], la_B[idx]
    bB = LB[idx, db[idx]]
    bA = _pick(LA[idx], g, gb, bB)
    lo = np.zeros(idx.size)
    hi = np.ones(idx.size)
    f_lo = np.abs(aA) - np.abs(bA)
    f_hi = np.abs(aB) - np.abs(bB)
    for _ in range(refine):
        t = (lo + hi) / 2
        P = a0 + t * (b0 - a0)
        L = spec(P)
        fa = _pick(L, g, ga, (1 - t) * aA + t * aB)
        fb = _pick(L, g, gb, (1 - t) * bA + t * bB)
        f = np.abs(fa) - np.abs(fb)
        pos = f > 0
        lo = np.where(pos, t, lo)
        f_lo = np.where(pos, f, f_lo)
        hi = np.where(pos, hi, t)
        f_hi = np.where(pos, f_hi, f)
    denom = f_lo - f_hi
    t = np.where(denom != 0, lo + (hi - lo) * f_lo / np.where(denom != 0, denom, 1), (lo + hi) / 2)
    t = np.clip(t, lo, hi)
    pts = a0 + t * (b0 - a0)
    return pts, (da[idx], db[idx]), cross


def _crossings(spec, A, B, LA, LB, refine=30, depth=6, split=4):
    """Like _edge_crossings, but an edge holding several crossings is split.

    A refined point where a third lambda outweighs the tied pair means the
    edge straddles more than one boundary; its sub-edges are searched
    again.  Returns (points, ia, ib, owner, mask) with ``owner`` the index
    of the input edge carrying each point.
    """
    pts, (ia, ib), mask = _edge_crossings(spec, A, B, LA, LB, refine)
    owner = np.nonzero(mask)[0]
    if refine == 0 or depth == 0 or pts.size == 0:
        return pts, ia, ib, owner, mask
    M = np.abs(spec(pts))
    top = M.max(axis=1)
    Ms = np.sort(M, axis=1)
    bad = (top - Ms[:, -2]) > 1e-6 * top
    if not bad.any():
        return pts, ia, ib, owner, mask
    keep = ~bad
    out_p, out_a, out_b, out_o = [pts[keep]], [ia[keep]], [ib[keep]], [owner[keep]]
    e = owner[bad]
    t = np.linspace(0.0, 1.0, split + 1)
    P = A[e][:, None] + t[None, :] * (B[e] - A[e])[:, None]
    L = spec(P.ravel()).reshape(len(e), split + 1, -1)
    K = L.shape[2]
    sa, sb = P[:, :-1].ravel(), P[:, 1:].ravel()
    la, lb = L[:, :-1].reshape(-1, K), L[:, 1:].reshape(-1, K)
    p2, a2, b2, o2, _ = _crossings(spec, sa, sb, la, lb, refine, depth - 1, split)
    out_p.append(p2)
    out_a.append(a2)
    out_b.append(b2)
    out_o.append(e[o2 // split])
    return (np.concatenate(out_p), np.concatenate(out_a), np.concatenate(out_b),
            np.concatenate(out_o), mask)


def _eval_grid(spec, Z, threads=1):
    rows = [Z[i] for i in range(Z.shape[0])]
    if threads and threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(spec, rows))
    else:
        parts = [spec(r) for r in rows]
    return np.stack(parts, axis=0)


def _grid(window, res):
    re0, re1, im0, im1 = window
    nx, ny = (res, res) if np.isscalar(res) else res
    xs = np.linspace(re0, re1, nx)
    ys = np.linspace(im0, im1, ny)
    return xs[None, :] + 1j * ys[:, None]


def equimodular_locus(spec, window, res=600, refine=30, threads=1, plane="q", max_skip=0.05):
    """Equimodular curve of the dominant lambdas over a rectangle.

    ``window`` = (re_min, re_max, im_min, im_max).  Grid nodes where some
    lambda is not finite are skipped; more than ``max_skip`` of them is an
    error.
    """
    Z = _grid(window, res)
    L = _eval_grid(spec, Z, threads)
    ny, nx, K = L.shape
    bad = ~np.all(np.isfinite(L), axis=2)
    if bad.mean() > max_skip:
        raise RuntimeError(f"{bad.mean():.1%} of grid points have non-finite lambdas")
    if bad.any():
        log.warning("skipping %d grid points with non-finite lambdas", int(bad.sum()))
    pts_all, lab_all, dir_all = [], [], []
    edge_ids = {}
    base = 0
    for axis in (1, 0):
        if axis == 1:
            A, B = Z[:, :-1], Z[:, 1:]
            LA, LB = L[:, :-1], L[:, 1:]
        else:
            A, B = Z[:-1, :], Z[1:, :]
            LA, LB = L[:-1, :], L[1:, :]
        shp = A.shape
        pts, ia, ib, owner, _ = _crossings(spec, A.ravel(), B.ravel(),
                                           LA.reshape(-1, K), LB.reshape(-1, K), refine)
        for n, f in enumerate(owner):
            edge_ids.setdefault((axis,) + tuple(int(v) for v in np.unravel_index(f, shp)), base + n)
        base += len(owner)
        pts_all.append(pts)
        lab_all += [f"{spec.names[a]}|{spec.names[b]}" for a, b in zip(ia, ib)]
        d = (B.ravel() - A.ravel())[owner]
        dir_all.append(d / np.abs(d))
    points = np.concatenate(pts_all)
    segs = _segments(edge_ids, ny, nx, points)
    meta = {"spectrum": spec.name, "window": list(window), "res": res, "skipped": int(bad.sum())}
    return LocusPointSet(points, plane, "equimodular-curve", meta, lab_all, segs,
                         np.concatenate(dir_all))


def _segments(edge_ids, ny, nx, points):
    """Join the crossings of each grid cell: two make a segment, more meet at their mean."""
    cells = {}
    for (axis, i, j), k in edge_ids.items():
        if axis == 1:  # horizontal edge (i,j)-(i,j+1) borders cells (i-1,j) and (i,j)
            for c in ((i - 1, j), (i, j)):
                cells.setdefault(c, []).append(k)
        else:  # vertical edge (i,j)-(i+1,j) borders cells (i,j-1) and (i,j)
            for c in ((i, j - 1), (i, j)):
                cells.setdefault(c, []).append(k)
    segs = []
    for (i, j), ks in sorted(cells.items()):
        if not (0 <= i < ny - 1 and 0 <= j < nx - 1):
            continue
        ks = sorted(ks)
        if len(ks) == 2:
            segs.append((ks[0], ks[1]))
        elif len(ks) > 2:
            ctr = np.mean(points[ks])
            order = sorted(ks, key=lambda k: math.atan2((points[k] - ctr).imag, (points[k] - ctr).real))
            for a, b in zip(order, order[1:]):
                segs.append((a, b))
    return segs


def line_crossings(spec, a, b, n=20001, refine=60):
    """Crossings along the segment a -> b (complex endpoints), sorted by position."""
    t = np.linspace(0.0, 1.0, n)
    P = complex(a) + t * (complex(b) - complex(a))
    L = spec(P)
    pts, ia, ib, _, _ = _crossings(spec, P[:-1], P[1:], L[:-1], L[1:], refine)
    # a sample landing exactly on a tie hides the crossing from both of its
    # edges, so such nodes are bridged by the edge between their neighbours
    Ms = np.sort(np.abs(L), axis=1)
    tie = np.nonzero((Ms[1:-1, -1] - Ms[1:-1, -2]) <= TIE_REL * Ms[1:-1, -1])[0] + 1
    if tie.size:
        p2, a2, b2, _, _ = _crossings(spec, P[tie - 1], P[tie + 1], L[tie - 1], L[tie + 1], refine)
        step = abs(P[1] - P[0])
        fresh = [k for k in range(len(p2)) if pts.size == 0 or np.min(np.abs(pts - p2[k])) > step]
        pts = np.concatenate([pts, p2[fresh]])
        ia = np.concatenate([ia, a2[fresh]])
        ib = np.concatenate([ib, b2[fresh]])
    order = np.argsort(np.abs(pts - a))
    return pts[order], [(spec.names[ia[k]], spec.names[ib[k]]) for k in order]


def real_crossings(spec, lo, hi, n=20001):
    pts, pairs = line_crossings(spec, complex(lo), complex(hi), n)
    return [p.real for p in pts], pairs


def circle_crossings(spec, centre, radius, n=720, refine=40):
    """Crossings on a small circle; an odd count marks an arc endpoint."""
    th = 2 * np.pi * np.arange(n + 1) / n
    P = centre + radius * np.exp(1j * th)
    L = spec(P)
    return _crossings(spec, P[:-1], P[1:], L[:-1], L[1:], refine)[0]


def dominant_magnitude(spec, z):
    """|lambda_dom|^(1/root) at each point."""
    M = np.abs(spec(z)).max(axis=1)
    return M ** (1 / spec.root)


def continuity_pairs(spec, locus, count=50, sep=1e-4):
    """Sample boundary-straddling pairs and the relative jump of |lambda_dom|^(1/root).

    Returns (pairs, rel) for pairs that really straddle (the dominant term
    differs across the pair).
    """
    n = len(locus)
    if n == 0:
        return np.zeros((0, 2), complex), np.zeros(0)
    idx = np.unique(np.linspace(0, n - 1, 4 * count).astype(int))
    P = locus.points[idx]
    D = locus.directions[idx]
    A, B = P - D * sep / 2, P + D * sep / 2
    LA, LB = spec(A), spec(B)
    _, _, mask = _edge_crossings(spec, A, B, LA, LB, refine=0)
    A, B, LA, LB = A[mask][:count], B[mask][:count], LA[mask][:count], LB[mask][:count]
    ma = np.abs(LA).max(axis=1) ** (1 / spec.root)
    mb = np.abs(LB).max(axis=1) ** (1 / spec.root)
    rel = np.abs(ma - mb) / np.maximum(ma, mb)
    return np.stack([A, B], axis=1), rel


def tie_defect(spec, points):
    """(|l1| - |l2|)/|l1| for the two largest moduli at each point."""
    M = np.sort(np.abs(spec(points)), axis=1)
    return (M[:, -1] - M[:, -2]) / M[:, -1]


# ----------------------------------------------------------- finite zeros

def _fraction(v):
    return v if v is None else Fraction(str(v)) if isinstance(v, float) else Fraction(v)


def _expected_degree(kind, r, m):
    n = r * m
    E = m * (r * (r - 1) // 2 + r * r)
    return {"P": n, "Z": n, "F": E - n + 1, "R": E}[kind]


def zeros_polynomial(family, m=None, kind="P", v=None):
    """Exact univariate polynomial whose zeros are plotted.

    Cyclic clan graphs use the closed forms; other families go through the
    Tutte polynomial of the built graph.
    """
    kind = kind.upper()
    if kind not in ("P", "F", "R", "Z"):
        raise ValueError("kind must be one of Z, P, F, R")
    spec = parse_family(family) if isinstance(family, str) else family
    if m is not None:
        spec.params["m"] = int(m)
    if kind == "Z" and v is None:
        raise ValueError("Z zeros need a fixed v")
    v = _fraction(v)
    if spec.kind == "clan-jn":
        r, mm = spec.params["r"], spec.params["m"]
        deg = _expected_degree(kind, r, mm)
        if deg > MAX_DEGREE:
            raise GuardError(f"degree {deg} exceeds the root-finder guard {MAX_DEGREE}")
        if kind == "P":
            return clan.chromatic_clan_poly(r, mm)
        if kind == "F" and r <= 3:
            return clan.flow_clan_poly(r, mm)
        if kind == "R" and r == 2:
            return clan.reliability_clan_poly(mm)
        if kind == "Z" and r <= 3:
            return clan.potts_clan_poly_q(r, mm, v)
    g = spec.build()
    deg = {"P": g.n, "Z": g.n, "F": g.m - g.n + g.components(), "R": g.m}[kind]
    if deg > MAX_DEGREE:
        raise GuardError(f"degree {deg} exceeds the root-finder guard {MAX_DEGREE}")
    if kind == "P":
        return chromatic(g)
    if kind == "F":
        return flow(g)
    if kind == "R":
        return reliability(g)
    Z = potts(g).polynomial
    return UniPoly([], "q") + Z.eval_ring(UniPoly.x("q"), v)


def finite_zeros(family, m=None, kind="P", v=None):
    poly = zeros_polynomial(family, m, kind, v)
    if poly.degree() > MAX_DEGREE:
        raise GuardError(f"degree {poly.degree()} exceeds the root-finder guard {MAX_DEGREE}")
    zs = np.array(roots(poly), dtype=complex)
    plane = "p" if kind.upper() == "R" else "q"
    meta = {"family": str(family), "m": m, "polynomial": kind.upper(), "degree": poly.degree()}
    if v is not None:
        meta["v"] = str(v)
    return LocusPointSet(zs, plane, "finite-m-zeros", meta, [""] * len(zs))


# ----------------------------------------------------- chromatic circles

@dataclass
class RegionFunction:
    label: str
    dominant: str
    magnitude: object  # callable q -> |W| (or |phi|, |exp f|)


def circle_params(r):
    """[(centre, radius)] for C_{r,j}: |q - (r+j-1)| = r-j+1."""
    return [(r + j - 1, r - j + 1) for j in range(1, r + 1)]


def distance_to_circles(z, r):
    z = np.asarray(z, dtype=complex)
    return np.min([np.abs(np.abs(z - c) - rho) for c, rho in circle_params(r)], axis=0)


def chromatic_region(q, r):
    """Index j of the region R_{r,j} containing q (boundaries count as exterior)."""
    j = 1
    for k, (c, rho) in enumerate(circle_params(r), 1):
        if abs(q - c) < rho:
            j = k + 1
        else:
            break
    return j


def chromatic_W(q, r):
    """|W| = |lambda_{P,r,j-1}|^(1/r) in region R_{r,j}."""
    j = chromatic_region(q, r)
    return abs(complex(clan.chromatic_lambda(r, j - 1, complex(q)))) ** (1 / r)


def chromatic_circle_locus(r, n=720):
    if r < 1:
        raise ValueError("r >= 1")
    th = 2 * np.pi * np.arange(n) / n
    pts, labels = [], []
    for j, (c, rho) in enumerate(circle_params(r), 1):
        pts.append(c + rho * np.exp(1j * th))
        labels += [f"C{r},{j}"] * n
    regions = [RegionFunction(f"R{r},{j}", f"P,{r},{j - 1}",
                              lambda q, j=j: abs(complex(clan.chromatic_lambda(r, j - 1, complex(q)))) ** (1 / r))
               for j in range(1, r + 2)]
    locus = LocusPointSet(np.concatenate(pts), "q", "closed-form-circle",
                          {"family": f"clan:jn:r={r}", "m": "inf", "v": -1, "q_c": 2 * r}, labels)
    return locus, regions


# ------------------------------------------------------------------- flow

QC_POLY = UniPoly([-14, -1, 13, -7, 1], "q")
Q1_POLY = UniPoly([-10, 7, -4, 1], "q")
ASYMPTOTES = tuple(sorted(((2 * j + 1) * math.pi / 6 + math.pi) % (2 * math.pi) - math.pi for j in range(6)))


def _real_roots(p, tol=1e-12):
    return sorted(z.real for z in roots(p) if abs(z.imag) <= tol * max(1, abs(z)))


def angle_gap(theta):
    """Distance from angle theta to the nearest asymptote angle."""
    theta = np.asarray(theta, dtype=float)
    d = np.abs(((theta[..., None] - np.array(ASYMPTOTES)) + np.pi) % (2 * np.pi) - np.pi)
    return d.min(axis=-1)


def far_field_points(radii=None, n=3600):
    """Equimodular crossings on circles |u| = rho of the u = 1/q plane."""
    spec = flow_spectrum("u")
    if radii is None:
        radii = np.geomspace(2e-3, 1 / 30, 12)
    out = []
    for rho in radii:
        out.append(circle_crossings(spec, 0j, rho, n=n))
    return np.concatenate(out)


@dataclass
class FlowCrossings:
    q_c: float
    q_1: float
    quartic_real_roots: list
    cubic_real_roots: list
    scan_crossings: list
    asymptotes: tuple
    far_points: np.ndarray
    far_max_gap: float


def flow_crossings_and_asymptotes(scan=(-2.0, 8.0)):
    quartic = _real_roots(QC_POLY)
    cubic = _real_roots(Q1_POLY)
    scan_pts, _ = real_crossings(flow_spectrum("q"), scan[0], scan[1])
    far = far_field_points()
    gap = float(angle_gap(np.angle(far)).max()) if len(far) else math.inf
    return FlowCrossings(max(quartic), cubic[0], quartic, cubic, scan_pts, ASYMPTOTES, far, gap)


# regions of the flow locus: reference points and the dominant term there
_FLOW_REFS = [("R1", 5.0, "F,2,0,1"), ("R2", 3.5, "F,2,1,1"), ("R3", 2.5, "F,2,2"),
              ("R4", -1.0, "F,2,1,2"), ("R5", 2 + 2j, "F,2,1,2"), ("R5*", 2 - 2j, "F,2,1,2"),
              ("R6", 2j, "F,2,0,1"), ("R6*", -2j, "F,2,0,1")]
_FLOW_WINDOW = (-6.0, 10.0, -8.0, 8.0)


@lru_cache(maxsize=2)
def _flow_components(res=320):
    """Connected regions of the grid, cut wherever the dominant term changes.

    Nodes sitting on a tie belong to the locus and join nothing.
    """
    spec = flow_spectrum("q")
    Z = _grid(_FLOW_WINDOW, res)
    L = _eval_grid(spec, Z)
    ny, nx, K = L.shape
    Ms = np.sort(np.abs(L), axis=2)
    on_locus = ((Ms[..., -1] - Ms[..., -2]) <= 1e-9 * Ms[..., -1]).ravel()
    parent = np.arange(ny * nx)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for axis in (1, 0):
        if axis == 1:
            A, B, LA, LB = Z[:, :-1], Z[:, 1:], L[:, :-1], L[:, 1:]
            ia = (np.arange(ny)[:, None] * nx + np.arange(nx - 1)[None, :]).ravel()
            ib = ia + 1
        else:
            A, B, LA, LB = Z[:-1, :], Z[1:, :], L[:-1, :], L[1:, :]
            ia = (np.arange(ny - 1)[:, None] * nx + np.arange(nx)[None, :]).ravel()
            ib = ia + nx
        _, _, mask = _edge_crossings(spec, A.ravel(), B.ravel(), LA.reshape(-1, K), LB.reshape(-1, K), 0)
        join = ~mask & ~on_locus[ia] & ~on_locus[ib]
        for a, b in zip(ia[join], ib[join]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    comp = np.array([find(a) for a in range(ny * nx)])
    comp[on_locus] = -1
    comp = comp.reshape(ny, nx)
    xs = Z[0].real
    ys = Z[:, 0].imag
    labels = {}
    for name, q, _ in _FLOW_REFS:
        c = _component_at(comp, xs, ys, complex(q))
        labels.setdefault(c, name)
    return comp, xs, ys, labels


def _component_at(comp, xs, ys, q):
    """Component of the grid node nearest to q that is not on the locus."""
    d = np.abs(xs[None, :] + 1j * ys[:, None] - q)
    d[comp < 0] = np.inf
    i, j = np.unravel_index(np.argmin(d), d.shape)
    return int(comp[i, j])


def _far_region(q):
    th = math.atan2(q.imag, q.real)
    a = abs(th)
    if a < math.pi / 6:
        return "R1"
    if a < math.pi / 2:
        return "R5" if th > 0 else "R5*"
    if a < 5 * math.pi / 6:
        return "R6" if th > 0 else "R6*"
    return "R4"


@dataclass
class RegionValue:
    label: str  # region name, or "boundary"
    dominant: str
    magnitude: float


def phi_regions(q, tol=1e-6):
    """Region of the flow locus containing q and |phi| = |lambda_dom|^(1/2)."""
    q = complex(q)
    lam = clan.flow_lambda_batch(np.array([q]))[0][0]
    mods = np.abs(lam)
    order = np.argsort(mods)[::-1]
    top = mods[order[0]]
    phi = float(top ** 0.5)
    if top > 0 and (top - mods[order[1]]) <= tol * top:
        return RegionValue("boundary", "tie", phi)
    re0, re1, im0, im1 = _FLOW_WINDOW
    if re0 <= q.real <= re1 and im0 <= q.imag <= im1:
        comp, xs, ys, labels = _flow_components()
        name = labels.get(_component_at(comp, xs, ys, q), "unlabelled")
    else:
        name = _far_region(q)
    dom = {n: d for n, _, d in _FLOW_REFS}.get(name, flow_spectrum().names[order[0]])
    return RegionValue(name, dom, phi)


# ------------------------------------------------------------- reliability

@dataclass
class ReliabilityArcs:
    locus: LocusPointSet
    real_crossings: list
    endpoints: list  # roots of R_2p that terminate an arc
    endpoint_parity: list  # crossings on a small circle around each endpoint


def reliability_arcs(window=(0.4, 1.9, -0.8, 0.8), res=400, threads=1):
    spec = reliability_spectrum()
    locus = equimodular_locus(spec, window, res, threads=threads, plane="p")
    locus.meta["family"] = "clan:jn:r=2"
    locus.meta["m"] = "inf"
    xs, _ = real_crossings(spec, 1.0, 2.0)
    R2p = clan.reliability_spectrum_r2()[1]
    ends = sorted(roots(R2p), key=lambda z: (round(z.real, 8), z.imag))
    parity = [len(circle_crossings(spec, z, 1e-3)) for z in ends]
    return ReliabilityArcs(locus, xs, ends, parity)
