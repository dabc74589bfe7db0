"""Chromatic, flow and reliability polynomials and counting valuations.

Each is read off T(G,x,y); each has a brute-force oracle for cross-checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .polynomial import UniPoly
from .transfer import potts_transfer
from .tutte import GuardError, tutte_dc

# above this many vertices `method="auto"` sweeps a frontier instead of
# running deletion-contraction (blocks beyond 16 vertices are not memoised)
DC_MAX_N = 24


@dataclass(frozen=True)
class SpecializationResult:
    kind: str
    value: object  # UniPoly or int
    provenance: str

    def to_json(self, graph=""):
        body = {"kind": self.kind, "graph": graph, "provenance": self.provenance}
        if isinstance(self.value, UniPoly):
            body["polynomial"] = self.value.to_str()
        else:
            body["count"] = str(self.value)
        return body


def _tutte(g, t=None):
    return t if t is not None else tutte_dc(g)


def chromatic(g, t=None, method="auto"):
    """P(G,q) = (-q)^k (-1)^n T(G, 1-q, 0)."""
    if method == "transfer" or (method == "auto" and t is None and g.n > DC_MAX_N):
        qv = UniPoly.x("q")
        return UniPoly([], "q") + potts_transfer(g, qv, -1)
    t = _tutte(g, t)
    q = UniPoly.x("q")
    val = t.polynomial.eval_ring(1 - q, 0)
    val = UniPoly([], "q") + val
    k, n = t.k, t.n
    return val * ((-q) ** k) * ((-1) ** n)


def flow(g, t=None):
    """F(G,q) = (-1)^(|E|-|V|+k) T(G, 0, 1-q)."""
    t = _tutte(g, t)
    q = UniPoly.x("q")
    val = UniPoly([], "q") + t.polynomial.eval_ring(0, 1 - q)
    return val * ((-1) ** (t.m - t.n + t.k))


def reliability(g, t=None):
    """All-terminal reliability, exact in p.

    With T(G,1,y) = sum_j c_j y^j and c = |E| - n + 1,
    R = p^(n-1) sum_j c_j (1-p)^(c-j).
    """
    if not g.is_connected():
        raise ValueError("reliability needs a connected graph")
    t = _tutte(g, t)
    c = g.m - g.n + 1
    p = UniPoly.x("p")
    onem = 1 - p
    total = UniPoly([], "p")
    ycoef = {}
    for (i, j), a in t.polynomial.c.items():
        ycoef[j] = ycoef.get(j, 0) + a  # x = 1
    for j, a in ycoef.items():
        if a:
            total = total + onem ** (c - j) * a
    return total * p ** (g.n - 1)


def a_s(g, s=1, t=None):
    """(-1)^n P(G, -s); s = 1 gives the acyclic orientation count."""
    P = chromatic(g, t)
    return (-1) ** g.n * P.eval_exact(-s)


def acyclic_count(g, method="auto"):
    """a(G) = (-1)^n P(G,-1) = T(G,2,0)."""
    if method == "transfer" or (method == "auto" and g.n > DC_MAX_N):
        return (-1) ** g.n * potts_transfer(g, -1, -1)
    return tutte_dc(g).polynomial.eval_exact(2, 0)


def valuations(g, s=(1,), t=None):
    t = _tutte(g, t)
    T = t.polynomial
    out = {
        "N_ST": T.eval_exact(1, 1),
        "N_SF": T.eval_exact(2, 1),
        "N_CSSG": T.eval_exact(1, 2),
        "N_SSG": 2 ** g.m,
        "a": T.eval_exact(2, 0),
    }
    if s:
        P = chromatic(g, t)
        out["a_s"] = {int(si): (-1) ** g.n * P.eval_exact(-si) for si in s}
    return out


# ------------------------------------------------------------------ oracles

def chromatic_oracle(g, q0):
    if g.n > 10 or q0 > 6:
        raise GuardError("chromatic_oracle needs n <= 10 and q <= 6")
    eu, ev = g.arrays()
    return kernels.coloring_count(g.n, eu, ev, int(q0))


def flow_oracle(g, q0, flip=None):
    """Nowhere-zero Z_q0 flows; ``flip`` reverses the chosen edges' orientation."""
    if g.m > 14 or q0 > 5:
        raise GuardError("flow_oracle needs |E| <= 14 and q <= 5")
    eu, ev = g.arrays()
    if flip is not None:
        f = np.asarray(flip, dtype=bool)
        eu, ev = np.where(f, ev, eu), np.where(f, eu, ev)
    return kernels.flow_count(g.n, eu, ev, int(q0))


def reliability_oracle(g, p0):
    if g.m > 16:
        raise GuardError("reliability_oracle needs |E| <= 16")
    p0 = Fraction(p0)
    eu, ev = g.arrays()
    H = kernels.subset_histogram(g.n, eu, ev)
    total = Fraction(0)
    if g.n == 0:
        return Fraction(1)
    for s in range(H.shape[1]):
        c = int(H[1, s])
        if c:
            total += c * p0 ** s * (1 - p0) ** (g.m - s)
    return total


def acyclic_oracle(g):
    if g.m > 16:
        raise GuardError("acyclic_oracle needs |E| <= 16")
    eu, ev = g.arrays()
    return kernels.acyclic_count(g.n, eu, ev)


def specialize(g, kind):
    if kind == "chromatic":
        return SpecializationResult(kind, chromatic(g), "via-tutte")
    if kind == "flow":
        return SpecializationResult(kind, flow(g), "via-tutte")
    if kind == "reliability":
        return SpecializationResult(kind, reliability(g), "via-tutte")
    raise ValueError(kind)
