"""Hot numerical kernels.

Every kernel exists twice: a loop version compiled with numba and a
vectorised numpy version.  The public names dispatch on
``tuttekit._accel.USE_NUMBA``; both variants stay importable (``*_numba``,
``*_numpy``) so tests and the benchmark can compare them directly.

Graph kernels take ``n`` and two int64 endpoint arrays ``eu``, ``ev``.
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, njit

_EPS = np.finfo(float).eps


# ---------------------------------------------------------------- Aberth

@njit
def _aberth_numba(c, z, tol, maxiter):
    deg = c.shape[0] - 1
    n = z.shape[0]
    z = z.copy()
    done = np.zeros(n, dtype=np.bool_)
    ac = np.abs(c)
    it = 0
    for it in range(1, maxiter + 1):
        znew = z.copy()
        alldone = True
        for i in range(n):
            if done[i]:
                continue
            zi = z[i]
            p = c[0]
            dp = 0j
            bound = ac[0]
            azi = abs(zi)
            for k in range(1, deg + 1):
                dp = dp * zi + p
                p = p * zi + c[k]
                bound = bound * azi + ac[k]
            if abs(p) <= 8.0 * 2.220446049250313e-16 * bound * (deg + 1):
                done[i] = True
                continue
            if dp == 0:
                ratio = p
            else:
                ratio = p / dp
            s = 0j
            for j in range(n):
                if j != i:
                    d = zi - z[j]
                    if d != 0:
                        s += 1.0 / d
            den = 1.0 - ratio * s
            if den == 0:
                w = ratio
            else:
                w = ratio / den
            znew[i] = zi - w
            if abs(w) <= tol * max(1.0, azi):
                done[i] = True
            else:
                alldone = False
        z = znew
        if alldone:
            break
    return z, it, np.all(done)


def _aberth_numpy(c, z, tol, maxiter):
    c = np.asarray(c, dtype=complex)
    z = np.array(z, dtype=complex)
    deg = c.shape[0] - 1
    ac = np.abs(c)
    done = np.zeros(z.shape[0], dtype=bool)
    it = 0
    for it in range(1, maxiter + 1):
        act = ~done
        zi = z[act]
        p = np.full(zi.shape, c[0], dtype=complex)
        dp = np.zeros_like(p)
        bound = np.full(zi.shape, ac[0])
        azi = np.abs(zi)
        for k in range(1, deg + 1):
            dp = dp * zi + p
            p = p * zi + c[k]
            bound = bound * azi + ac[k]
        small = np.abs(p) <= 8.0 * _EPS * bound * (deg + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dp == 0, p, p / dp)
            diff = zi[:, None] - z[None, :]
            inv = np.where(diff == 0, 0, 1.0 / diff)
            s = inv.sum(axis=1)
            den = 1.0 - ratio * s
            w = np.where(den == 0, ratio, ratio / den)
        w = np.where(small, 0, w)
        idx = np.nonzero(act)[0]
        z[idx] = zi - w
        done[idx] = small | (np.abs(w) <= tol * np.maximum(1.0, azi))
        if done.all():
            break
    return z, it, bool(done.all())


def aberth(c, z0, tol=1e-14, maxiter=500):
    """Simultaneous Aberth-Ehrlich iteration (Jacobi form).

    ``c`` holds complex coefficients, highest degree first.  Returns
    ``(roots, iterations, converged)``.
    """
    c = np.ascontiguousarray(c, dtype=np.complex128)
    z0 = np.ascontiguousarray(z0, dtype=np.complex128)
    if USE_NUMBA:
        z, it, ok = _aberth_numba(c, z0, float(tol), int(maxiter))
        return z, int(it), bool(ok)
    return _aberth_numpy(c, z0, tol, maxiter)


# ------------------------------------------------- batched small-degree roots

@njit
def _batched_roots_numba(C):
    N = C.shape[0]
    deg = C.shape[1] - 1
    out = np.empty((N, deg), dtype=np.complex128)
    for r in range(N):
        c = C[r] / C[r, 0]
        rad = 0.0
        for k in range(1, deg + 1):
            v = abs(c[k]) ** (1.0 / k)
            if v > rad:
                rad = v
        rad = 2.0 * rad + 1e-300
        z = np.empty(deg, dtype=np.complex128)
        for k in range(deg):
            ang = 2.0 * np.pi * k / deg + 0.4
            z[k] = rad * (np.cos(ang) + 1j * np.sin(ang))
        z, it, ok = _aberth_numba(c, z, 1e-13, 200)
        out[r] = z
    return out


def _batched_roots_numpy(C):
    C = np.asarray(C, dtype=complex)
    N, d1 = C.shape
    deg = d1 - 1
    c = C / C[:, :1]
    comp = np.zeros((N, deg, deg), dtype=complex)
    comp[:, 0, :] = -c[:, 1:]
    if deg > 1:
        idx = np.arange(deg - 1)
        comp[:, idx + 1, idx] = 1.0
    return np.linalg.eigvals(comp)


def batched_roots(C):
    """Roots of many polynomials of one degree (rows of ``C``, highest first).

    Order of the roots inside a row is arbitrary.
    """
    C = np.ascontiguousarray(C, dtype=np.complex128)
    if C.shape[1] == 2:
        return (-C[:, 1] / C[:, 0])[:, None]
    if USE_NUMBA:
        return _batched_roots_numba(C)
    return _batched_roots_numpy(C)


# --------------------------------------------- spanning subgraph histogram

@njit
def _subset_hist_numba(n, eu, ev):
    E = eu.shape[0]
    H = np.zeros((n + 1, E + 1), dtype=np.int64)
    parent = np.empty(n, dtype=np.int64)
    for mask in range(1 << E):
        for i in range(n):
            parent[i] = i
        comps = n
        size = 0
        for e in range(E):
            if (mask >> e) & 1:
                size += 1
                a = eu[e]
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                b = ev[e]
                while parent[b] != b:
                    parent[b] = parent[parent[b]]
                    b = parent[b]
                if a != b:
                    parent[a] = b
                    comps -= 1
        H[comps, size] += 1
    return H


def _subset_hist_numpy(n, eu, ev, chunk=1 << 15):
    E = len(eu)
    H = np.zeros((n + 1, E + 1), dtype=np.int64)
    total = 1 << E
    bits = np.arange(E, dtype=np.int64)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        act = ((masks[:, None] >> bits[None, :]) & 1).astype(bool)
        lab = np.tile(np.arange(n, dtype=np.int64), (len(masks), 1))
        while True:
            changed = False
            for e in range(E):
                u, v = eu[e], ev[e]
                if u == v:
                    continue
                a = act[:, e]
                m = np.minimum(lab[:, u], lab[:, v])
                upd = a & ((lab[:, u] != m) | (lab[:, v] != m))
                if upd.any():
                    changed = True
                    lab[upd, u] = m[upd]
                    lab[upd, v] = m[upd]
            if not changed:
                break
        comps = (lab == np.arange(n)[None, :]).sum(axis=1)
        sizes = act.sum(axis=1)
        np.add.at(H, (comps, sizes), 1)
    return H


def subset_histogram(n, eu, ev):
    """``H[k, s]`` = number of edge subsets with ``k`` components and ``s`` edges."""
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    if USE_NUMBA:
        return _subset_hist_numba(int(n), eu, ev)
    return _subset_hist_numpy(int(n), eu, ev)


# ------------------------------------------------------ acyclic orientations

@njit
def _acyclic_numba(n, eu, ev):
    E = eu.shape[0]
    for e in range(E):
        if eu[e] == ev[e]:
            return 0
    indeg = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    # outgoing adjacency rebuilt per mask
    head = np.empty(n, dtype=np.int64)
    nxt = np.empty(E, dtype=np.int64)
    tgt = np.empty(E, dtype=np.int64)
    count = 0
    for mask in range(1 << E):
        for i in range(n):
            indeg[i] = 0
            head[i] = -1
        for e in range(E):
            if (mask >> e) & 1:
                a = eu[e]
                b = ev[e]
            else:
                a = ev[e]
                b = eu[e]
            tgt[e] = b
            nxt[e] = head[a]
            head[a] = e
            indeg[b] += 1
        sp = 0
        for i in range(n):
            if indeg[i] == 0:
                stack[sp] = i
                sp += 1
        seen = 0
        while sp > 0:
            sp -= 1
            a = stack[sp]
            seen += 1
            e = head[a]
            while e != -1:
                b = tgt[e]
                indeg[b] -= 1
                if indeg[b] == 0:
                    stack[sp] = b
                    sp += 1
                e = nxt[e]
        if seen == n:
            count += 1
    return count


def _acyclic_numpy(n, eu, ev, chunk=1 << 14):
    E = len(eu)
    if np.any(eu == ev):
        return 0
    total = 1 << E
    bits = np.arange(E, dtype=np.int64)
    U = np.zeros((E, n))
    V = np.zeros((E, n))
    U[np.arange(E), eu] = 1
    V[np.arange(E), ev] = 1
    count = 0
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        fwd = ((masks[:, None] >> bits[None, :]) & 1).astype(bool)
        alive = np.ones((len(masks), n), dtype=bool)
        for _ in range(n):
            # edge is live when both ends are alive
            live = (alive.astype(float) @ U.T) * (alive.astype(float) @ V.T) > 0
            indeg = (live & fwd).astype(float) @ V + (live & ~fwd).astype(float) @ U
            src = alive & (indeg == 0)
            if not src.any():
                break
            alive &= ~src
        count += int((~alive.any(axis=1)).sum())
    return count


def acyclic_count(n, eu, ev):
    """Number of acyclic orientations by enumeration (``2^|E|`` masks)."""
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    if USE_NUMBA:
        return int(_acyclic_numba(int(n), eu, ev))
    return int(_acyclic_numpy(int(n), eu, ev))


# ---------------------------------------------------------- proper colourings

@njit
def _coloring_numba(n, eu, ev, q):
    E = eu.shape[0]
    for e in range(E):
        if eu[e] == ev[e]:
            return 0
    if n == 0:
        return 1
    col = np.zeros(n, dtype=np.int64)
    count = 0
    while True:
        ok = True
        for e in range(E):
            if col[eu[e]] == col[ev[e]]:
                ok = False
                break
        if ok:
            count += 1
        i = 0
        while i < n:
            col[i] += 1
            if col[i] < q:
                break
            col[i] = 0
            i += 1
        if i == n:
            break
    return count


def _coloring_numpy(n, eu, ev, q, chunk=1 << 16):
    if np.any(eu == ev):
        return 0
    total = q ** n
    pw = q ** np.arange(n, dtype=np.int64)
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        col = (idx[:, None] // pw[None, :]) % q
        ok = np.all(col[:, eu] != col[:, ev], axis=1)
        count += int(ok.sum())
    return count


def coloring_count(n, eu, ev, q):
    """Proper ``q``-colourings by enumeration of all ``q^n`` assignments."""
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    if q <= 0:
        return 1 if n == 0 else 0
    if USE_NUMBA:
        return int(_coloring_numba(int(n), eu, ev, int(q)))
    return int(_coloring_numpy(int(n), eu, ev, int(q)))


# ------------------------------------------------------- nowhere-zero flows

@njit
def _flow_numba(M, q):
    # M: (tree edges) x (cotree edges) signed fundamental cycle matrix
    t, c = M.shape
    f = np.ones(c, dtype=np.int64)
    val = np.zeros(t, dtype=np.int64)
    for i in range(t):
        s = 0
        for j in range(c):
            s += M[i, j]
        val[i] = s
    count = 0
    while True:
        ok = True
        for i in range(t):
            if val[i] % q == 0:
                ok = False
                break
        if ok:
            count += 1
        j = 0
        while j < c:
            if f[j] < q - 1:
                f[j] += 1
                for i in range(t):
                    val[i] += M[i, j]
                break
            for i in range(t):
                val[i] -= M[i, j] * (q - 2)
            f[j] = 1
            j += 1
        if j == c:
            break
    return count


def _flow_numpy(M, q, chunk=1 << 16):
    t, c = M.shape
    total = (q - 1) ** c
    pw = (q - 1) ** np.arange(c, dtype=np.int64)
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        f = (idx[:, None] // pw[None, :]) % (q - 1) + 1
        val = f @ M.T
        count += int(np.all(val % q != 0, axis=1).sum())
    return count


def _cycle_matrix(n, eu, ev):
    """Signed tree-edge x cotree-edge matrix of fundamental cycles."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree, cotree = [], []
    for e, (a, b) in enumerate(zip(eu, ev)):
        ra, rb = find(a), find(b)
        if ra == rb:
            cotree.append(e)
        else:
            parent[ra] = rb
            tree.append(e)
    adj = {v: [] for v in range(n)}
    for e in tree:
        adj[eu[e]].append((ev[e], e, 1))
        adj[ev[e]].append((eu[e], e, -1))
    tindex = {e: i for i, e in enumerate(tree)}
    M = np.zeros((len(tree), len(cotree)), dtype=np.int64)
    for j, e in enumerate(cotree):
        a, b = eu[e], ev[e]
        if a == b:
            continue
        # cotree edge carries flow a->b; route back b->a through the tree
        prev = {b: None}
        stack = [b]
        while stack:
            w = stack.pop()
            if w == a:
                break
            for (x, te, sgn) in adj[w]:
                if x not in prev:
                    prev[x] = (w, te, sgn)
                    stack.append(x)
        w = a
        while w != b:
            pw_, te, sgn = prev[w]
            # tree edge traversed pw_ -> w in the b->a path
            M[tindex[te], j] += sgn
            w = pw_
    return M


def flow_count(n, eu, ev, q):
    """Nowhere-zero ``Z_q`` flows; enumerates cotree values only."""
    eu = [int(a) for a in eu]
    ev = [int(b) for b in ev]
    if q <= 1:
        return 1 if len(eu) == 0 else 0
    M = _cycle_matrix(n, eu, ev)
    if M.shape[1] == 0:
        return 1 if M.shape[0] == 0 else 0
    if USE_NUMBA:
        return int(_flow_numba(M, int(q)))
    return int(_flow_numpy(M, int(q)))


KERNELS = {
    "aberth": (_aberth_numba, _aberth_numpy),
    "batched_roots": (_batched_roots_numba, _batched_roots_numpy),
    "subset_histogram": (_subset_hist_numba, _subset_hist_numpy),
    "acyclic_count": (_acyclic_numba, _acyclic_numpy),
    "coloring_count": (_coloring_numba, _coloring_numpy),
    "flow_count": (_flow_numba, _flow_numpy),
}
