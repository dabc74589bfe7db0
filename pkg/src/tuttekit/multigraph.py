"""Finite undirected multigraphs with loops and parallel edges."""
from __future__ import annotations

from collections import Counter

import numpy as np

CANON_MAX_N = 16


class Multigraph:
    """Immutable multigraph on vertices ``0..n-1``.

    ``edges`` is an indexed tuple of endpoint pairs; a loop is ``(u, u)``.
    Derived quantities never depend on the edge order.
    """

    __slots__ = ("n", "edges", "_key")

    def __init__(self, n, edges=()):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            es.append((u, v) if u <= v else (v, u))
        self.n = n
        self.edges = tuple(es)
        self._key = None

    # sizes
    @property
    def m(self):
        return len(self.edges)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Multigraph) and self.n == other.n and \
            Counter(self.edges) == Counter(other.edges)

    def __hash__(self):
        return hash((self.n, frozenset(Counter(self.edges).items())))

    def arrays(self):
        eu = np.array([u for u, _ in self.edges], dtype=np.int64)
        ev = np.array([v for _, v in self.edges], dtype=np.int64)
        return eu, ev

    def loops(self):
        return sum(1 for u, v in self.edges if u == v)

    def degree(self, v):
        return sum((u == v) + (w == v) for u, w in self.edges)

    def degrees(self):
        d = [0] * self.n
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        return d

    def _check(self, e):
        if not isinstance(e, (int, np.integer)) or not (0 <= e < len(self.edges)):
            raise IndexError(f"edge index {e!r} out of range 0..{len(self.edges) - 1}")

    # operations
    def delete_edge(self, e):
        self._check(e)
        return Multigraph(self.n, self.edges[:e] + self.edges[e + 1:])

    def contract_edge(self, e):
        self._check(e)
        a, b = self.edges[e]
        if a == b:
            raise ValueError("cannot contract a loop")
        # a < b; merge b into a, shift labels above b down
        def rl(w):
            if w == b:
                w = a
            return w - 1 if w > b else w

        rest = self.edges[:e] + self.edges[e + 1:]
        return Multigraph(self.n - 1, [(rl(u), rl(v)) for u, v in rest])

    def component_labels(self):
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        return [find(v) for v in range(self.n)]

    def components(self):
        return len(set(self.component_labels()))

    def is_connected(self):
        return self.components() <= 1

    def rank(self):
        return self.n - self.components()

    def corank(self):
        return self.m - self.rank()

    def is_bridge(self, e):
        self._check(e)
        u, v = self.edges[e]
        if u == v:
            return False
        return self.delete_edge(e).components() > self.components()

    def laplacian(self):
        Q = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                continue
            Q[u][u] += 1
            Q[v][v] += 1
            Q[u][v] -= 1
            Q[v][u] -= 1
        return Q

    def multiplicity_matrix(self):
        A = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            A[u][v] += 1
            if u != v:
                A[v][u] += 1
        return A

    def relabel(self, perm):
        """Vertex ``v`` becomes ``perm[v]``."""
        return Multigraph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def disjoint_union(self, other):
        off = self.n
        return Multigraph(self.n + other.n,
                          list(self.edges) + [(u + off, v + off) for u, v in other.edges])

    def induced_components(self):
        """List of connected components as (Multigraph, vertex list)."""
        lab = self.component_labels()
        groups = {}
        for v, r in enumerate(lab):
            groups.setdefault(r, []).append(v)
        out = []
        for verts in groups.values():
            idx = {v: i for i, v in enumerate(verts)}
            es = [(idx[u], idx[v]) for u, v in self.edges if u in idx]
            out.append((Multigraph(len(verts), es), verts))
        return out

    def canonical_key(self):
        if self._key is None:
            if self.n > CANON_MAX_N:
                raise ValueError(f"canonical_key limited to {CANON_MAX_N} vertices")
            self._key = canonical_key_matrix(self.multiplicity_matrix())
        return self._key

    # text format
    def to_edge_list(self):
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text):
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows or len(rows[0]) != 2:
            raise ValueError("edge list must start with 'n m'")
        n, m = int(rows[0][0]), int(rows[0][1])
        body = rows[1:]
        if len(body) != m:
            raise ValueError(f"header announces {m} edges, found {len(body)}")
        edges = []
        for r in body:
            if len(r) != 2:
                raise ValueError(f"bad edge line {' '.join(r)!r}")
            edges.append((int(r[0]), int(r[1])))
        return cls(n, edges)


# free functions mirroring the methods
def delete_edge(g, e):
    return g.delete_edge(e)


def contract_edge(g, e):
    return g.contract_edge(e)


def components(g):
    return g.components()


def laplacian(g):
    return g.laplacian()


def canonical_key(g):
    return g.canonical_key()


# ------------------------------------------------------- canonical labeling
#
# Individualisation-refinement: colour refinement to an equitable ordered
# partition, branch on the first smallest non-singleton cell, keep the
# lexicographically smallest permuted matrix.  Automorphisms found at leaves
# prune the search (orbit pruning, plus a jump back to the divergence point
# when a leaf matches the first leaf).

def _refine(A, cells):
    n = len(A)
    while True:
        colour = [0] * n
        for ci, cell in enumerate(cells):
            for v in cell:
                colour[v] = ci
        new_cells = []
        for ci, cell in enumerate(cells):
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {}
            for v in cell:
                row = A[v]
                s = tuple(sorted((colour[u], row[u]) for u in range(n) if row[u] and u != v))
                sig.setdefault((row[v], s), []).append(v)
            for k in sorted(sig):
                new_cells.append(sig[k])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _cert(A, order):
    n = len(order)
    return tuple(A[order[i]][order[j]] for i in range(n) for j in range(i, n))


class _Search:
    def __init__(self, A):
        self.A = A
        self.n = len(A)
        self.first = None  # (cert, order)
        self.best = None
        self.autos = []

    def orbits(self, fixed, cell):
        parent = {v: v for v in range(self.n)}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for g in self.autos:
            if all(g[v] == v for v in fixed):
                for v in range(self.n):
                    ra, rb = find(v), find(g[v])
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        return find

    def leaf(self, order, path):
        c = _cert(self.A, order)
        if self.first is None:
            self.first = (c, order, path)
            self.best = (c, order)
            return None
        if c == self.first[0]:
            g = [0] * self.n
            for a, b in zip(self.first[1], order):
                g[a] = b
            self.autos.append(g)
            # jump back to where this path left the first one
            fp = self.first[2]
            k = 0
            while k < len(fp) and k < len(path) and fp[k] == path[k]:
                k += 1
            return k
        if c == self.best[0]:
            g = [0] * self.n
            for a, b in zip(self.best[1], order):
                g[a] = b
            self.autos.append(g)
        elif c < self.best[0]:
            self.best = (c, order)
        return None

    def run(self, cells, path):
        cells = _refine(self.A, cells)
        if all(len(c) == 1 for c in cells):
            return self.leaf([c[0] for c in cells], path)
        size = min(len(c) for c in cells if len(c) > 1)
        ti = next(i for i, c in enumerate(cells) if len(c) == size)
        target = cells[ti]
        tried = []
        depth = len(path)
        for v in sorted(target):
            if tried:
                find = self.orbits(path, target)
                if any(find(v) == find(t) for t in tried):
                    continue
            tried.append(v)
            rest = [w for w in target if w != v]
            child = cells[:ti] + [[v], rest] + cells[ti + 1:]
            jump = self.run(child, path + [v])
            if jump is not None and jump < depth:
                return jump
        return None


def canonical_key_matrix(A):
    n = len(A)
    if n == 0:
        return b"\x00"
    s = _Search(A)
    s.run([list(range(n))], [])
    cert = s.best[0]
    body = ",".join(map(str, cert))
    return f"{n}|{body}".encode()
