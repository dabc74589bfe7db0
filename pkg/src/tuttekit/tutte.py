"""Tutte polynomial and Potts partition function.

Two independent routes: subset-expansion oracles (via the enumeration
kernel) and memoised deletion-contraction.  ``z_from_t``/``t_from_z``
convert exactly between T(G,x,y) and Z(G,q,v).
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .multigraph import CANON_MAX_N, Multigraph, canonical_key_matrix
from .polynomial import BiPoly

ORACLE_MAX_EDGES = 20

XY = ("x", "y")
QV = ("q", "v")


class GuardError(ValueError):
    """Input exceeds an enumeration or size guard."""


@dataclass(frozen=True)
class TutteResult:
    polynomial: BiPoly
    source: str
    n: int
    m: int
    k: int

    def __call__(self, x, y):
        return self.polynomial.eval_exact(x, y)


@dataclass(frozen=True)
class PottsResult:
    polynomial: BiPoly
    n: int
    m: int
    k: int


def _summary(g):
    return g.n, g.m, g.components()


# ------------------------------------------------------------------ oracles

def _histogram(g):
    if g.m > ORACLE_MAX_EDGES:
        raise GuardError(f"oracle enumerates 2^|E| subsets; |E|={g.m} exceeds {ORACLE_MAX_EDGES}, use tutte_dc")
    eu, ev = g.arrays()
    return kernels.subset_histogram(g.n, eu, ev)


def tutte_oracle(g: Multigraph) -> TutteResult:
    H = _histogram(g)
    n, m, k0 = _summary(g)
    shifted = {}
    for k in range(H.shape[0]):
        for s in range(H.shape[1]):
            c = int(H[k, s])
            if c:
                key = (k - k0, s - n + k)
                shifted[key] = shifted.get(key, 0) + c
    S = BiPoly(shifted, XY)
    x, y = BiPoly.gens(XY)
    T = BiPoly._as(S.eval_ring(x - 1, y - 1), XY)
    return TutteResult(T, "oracle", n, m, k0)


def potts_oracle(g: Multigraph) -> PottsResult:
    H = _histogram(g)
    terms = {}
    for k in range(H.shape[0]):
        for s in range(H.shape[1]):
            c = int(H[k, s])
            if c:
                terms[(k, s)] = c
    n, m, k0 = _summary(g)
    return PottsResult(BiPoly(terms, QV), n, m, k0)


# ----------------------------------------------------- deletion-contraction

class _DC:
    def __init__(self, memo):
        self.memo = memo
        self.x, self.y = BiPoly.gens(XY)
        self.one = BiPoly.const(1, XY)
        self.hits = 0
        self.calls = 0

    def ysum(self, k, start):
        """start + y + y^2 + ... + y^(k-1)"""
        acc = start
        yp = self.one
        for _ in range(1, k):
            yp = yp * self.y
            acc = acc + yp
        return acc

    def graph(self, n, mult):
        """T of a loopless multigraph given as {(u, v): multiplicity}, u < v."""
        result = self.one
        for verts, block in _blocks(n, mult):
            if len(block) == 1:
                (k,) = block.values()
                result = result * self.ysum(k, self.x)
            else:
                result = result * self.block(verts, block)
        return result

    def block(self, verts, mult):
        self.calls += 1
        idx = {v: i for i, v in enumerate(sorted(verts))}
        n = len(idx)
        local = {}
        for (u, v), k in mult.items():
            a, b = idx[u], idx[v]
            local[(min(a, b), max(a, b))] = k
        key = None
        if n <= CANON_MAX_N and self.memo is not None:
            A = [[0] * n for _ in range(n)]
            for (a, b), k in local.items():
                A[a][b] = A[b][a] = k
            key = canonical_key_matrix(A)
            hit = self.memo.get(key)
            if hit is not None:
                self.hits += 1
                return hit
        u, w = _pick_edge(n, local)
        k = local[(u, w)]
        deleted = dict(local)
        del deleted[(u, w)]
        contracted = {}
        for (a, b), c in deleted.items():
            a2 = u if a == w else a
            b2 = u if b == w else b
            a2, b2 = (a2 - (a2 > w)), (b2 - (b2 > w))
            kk = (min(a2, b2), max(a2, b2))
            contracted[kk] = contracted.get(kk, 0) + c
        res = self.graph(n, deleted) + self.ysum(k, self.one) * self.graph(n - 1, contracted)
        if key is not None:
            self.memo[key] = res
        return res


def _pick_edge(n, mult):
    """Edge class at a minimum-degree vertex, towards its busiest neighbour."""
    deg = [0] * n
    nb = [[] for _ in range(n)]
    for (a, b), k in mult.items():
        deg[a] += k
        deg[b] += k
        nb[a].append(b)
        nb[b].append(a)
    u = min((v for v in range(n) if nb[v]), key=lambda v: (len(nb[v]), deg[v], v))
    w = max(nb[u], key=lambda z: (deg[z], -z))
    return (min(u, w), max(u, w))


def _blocks(n, mult):
    """Biconnected components of the support graph.

    Yields (vertex set, {edge: multiplicity}) per block; isolated vertices
    are skipped.
    """
    adj = [[] for _ in range(n)]
    for (a, b) in mult:
        adj[a].append(b)
        adj[b].append(a)
    disc = [-1] * n
    low = [0] * n
    t = 0
    out = []
    for root in range(n):
        if disc[root] != -1 or not adj[root]:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(adj[root]))]
        estack = []
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] == -1:
                    estack.append((v, w))
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    block = {}
                    verts = set()
                    while True:
                        a, b = estack.pop()
                        e = (min(a, b), max(a, b))
                        block[e] = mult[e]
                        verts.add(a)
                        verts.add(b)
                        if (a, b) == (parent, v):
                            break
                    out.append((verts, block))
    return out


def tutte_dc(g: Multigraph, memo=None, use_memo=True) -> TutteResult:
    """Deletion-contraction with loop/bridge factor rules.

    Works on parallel classes: a class of multiplicity k contributes
    T(G - class) + (1 + y + ... + y^(k-1)) T(G / class), or
    (x + y + ... + y^(k-1)) T(G / class) when it is a bridge.  Blocks
    multiply, so the recursion runs per 2-connected piece; blocks with at
    most 16 vertices are memoised by canonical key.  ``memo`` may be a
    shared dict; by default a fresh one is used per call.
    """
    if memo is None and use_memo:
        memo = {}
    dc = _DC(memo if use_memo else None)
    loops = 0
    mult = {}
    for u, v in g.edges:
        if u == v:
            loops += 1
        else:
            mult[(u, v)] = mult.get((u, v), 0) + 1
    T = dc.graph(g.n, mult) * (dc.y ** loops)
    n, m, k = _summary(g)
    return TutteResult(T, "recursion", n, m, k)


def tutte(g: Multigraph) -> TutteResult:
    return tutte_dc(g)


# ------------------------------------------------------------- conversions

def z_from_t(t, k, n) -> PottsResult:
    """Z = (x-1)^k (y-1)^n T with x = 1 + q/v, y = 1 + v."""
    T = t.polynomial if isinstance(t, TutteResult) else t
    S = T.shift(1, 1)  # coefficients in X = x-1, Y = y-1
    terms = {}
    for (i, j), c in S.c.items():
        a, b = i + k, j + n - i - k
        if b < 0:
            raise ValueError("inexact conversion: (t, k, n) are inconsistent")
        terms[(a, b)] = terms.get((a, b), 0) + c
    m = t.m if isinstance(t, TutteResult) else -1
    return PottsResult(BiPoly(terms, QV), n, m, k)


def t_from_z(z, k, n) -> TutteResult:
    """Inverse of :func:`z_from_t` (q = XY, v = Y, then divide)."""
    Z = z.polynomial if isinstance(z, PottsResult) else z
    terms = {}
    for (a, b), c in Z.c.items():
        i, j = a - k, a + b - n
        if i < 0 or j < 0:
            raise ValueError("inexact conversion: (z, k, n) are inconsistent")
        terms[(i, j)] = terms.get((i, j), 0) + c
    S = BiPoly(terms, XY)
    x, y = BiPoly.gens(XY)
    T = BiPoly._as(S.eval_ring(x - 1, y - 1), XY)
    m = z.m if isinstance(z, PottsResult) else -1
    return TutteResult(T, "conversion", n, m, k)


def potts(g: Multigraph) -> PottsResult:
    t = tutte_dc(g)
    return z_from_t(t, t.k, t.n)
