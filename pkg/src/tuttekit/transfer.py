"""Frontier (transfer-matrix) evaluation of the Potts partition function.

Vertices are swept in label order.  The state is a set partition of the
current frontier, i.e. which frontier vertices are already joined by the
chosen edge subset; each state carries a weight in whatever ring ``q`` and
``v`` live in.  Cost grows with the Bell number of the frontier width, so
this suits long strips and rings of small blocks (the labelings produced by
:mod:`tuttekit.families` are already sweep-friendly).
"""
from __future__ import annotations

from .polynomial import BiPoly
from .tutte import QV, PottsResult, TutteResult, t_from_z


def _canon(labels):
    seen = {}
    return tuple(seen.setdefault(b, len(seen)) for b in labels)


def potts_transfer(g, q=None, v=None):
    """Z(G, q, v) = sum over edge subsets of q^k(A) v^|A|.

    With ``q``/``v`` omitted the result is the exact BiPoly in (q, v).
    """
    if q is None and v is None:
        q, v = BiPoly.gens(QV)
    return _sweep(g, q, v, ())[0]


def potts_prefix(g, q, v, checkpoints):
    """Z of the induced subgraphs on vertices 0..c for each c in ``checkpoints``.

    Only edges whose endpoints are both <= c are counted, so on a strip built
    column by column the checkpoint after column j is the free-BCx strip
    with j+1 columns.  One sweep serves the whole sequence.
    """
    return _sweep(g, q, v, tuple(checkpoints))


def _sweep(g, q, v, checkpoints):
    want = set(checkpoints)
    out = []
    one = 1
    n = g.n
    by_top = [[] for _ in range(n)]
    last = [-1] * n
    loops = [0] * n
    for a, b in g.edges:
        if a == b:
            loops[a] += 1
            continue
        top = max(a, b)
        by_top[top].append((a, b))
        last[a] = max(last[a], top)
        last[b] = max(last[b], top)
    frontier = []
    states = {(): one}
    for i in range(n):
        frontier.append(i)
        states = {s + (max(s, default=-1) + 1,): w for s, w in states.items()}
        if loops[i]:
            f = (1 + v) ** loops[i]
            states = {s: w * f for s, w in states.items()}
        for a, b in by_top[i]:
            pa, pb = frontier.index(a), frontier.index(b)
            new = {}
            for s, w in states.items():
                new[s] = new.get(s, 0) + w
                la, lb = s[pa], s[pb]
                if la == lb:
                    t = s
                else:
                    t = _canon(tuple(la if x == lb else x for x in s))
                new[t] = new.get(t, 0) + w * v
            states = new
        # retire vertices with no pending edges
        for x in [x for x in frontier if last[x] <= i]:
            p = frontier.index(x)
            new = {}
            for s, w in states.items():
                lab = s[p]
                rest = s[:p] + s[p + 1:]
                if lab not in rest:
                    w = w * q
                t = _canon(rest)
                new[t] = new.get(t, 0) + w
            states = new
            frontier.pop(p)
        if i in want:
            tot = 0
            for s, w in states.items():
                tot = tot + w * q ** (max(s, default=-1) + 1)
            out.append(tot)
    assert not frontier
    return [states.get((), 0)] + out


def potts_transfer_result(g):
    Z = potts_transfer(g)
    Z = BiPoly._as(Z, QV)
    return PottsResult(Z, g.n, g.m, g.components())


def tutte_transfer(g) -> TutteResult:
    z = potts_transfer_result(g)
    t = t_from_z(z, z.k, z.n)
    return TutteResult(t.polynomial, "transfer", g.n, g.m, z.k)
