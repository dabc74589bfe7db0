"""Constructors for the recursive graph families.

Vertex numbering is block-major: vertex ``i`` of block (or column) ``j`` is
``j*r + i`` (``j*Ly + i`` for strips).  Small parameters that make the
cyclic closure fold onto itself yield loops and parallel edges rather than
errors.

For lattice strips ``Lx`` counts columns of vertices.  With free BCx the
strip has ``Lx - 1`` square faces per row, with (twisted) periodic BCx it
has ``Lx``; the closed forms for a(G_m) are stated in terms of that face
count ``m``.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .multigraph import Multigraph

BC_NAMES = {"F": "free", "FREE": "free", "P": "periodic", "PERIODIC": "periodic",
            "T": "twisted", "TP": "twisted", "TPBC": "twisted", "TWISTED": "twisted",
            "TWISTED-PERIODIC": "twisted"}


def _bc(s):
    key = str(s).strip().upper()
    if key not in BC_NAMES:
        raise ValueError(f"unknown boundary condition {s!r}")
    return BC_NAMES[key]


def _check_pos(**kw):
    for k, v in kw.items():
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"{k} must be a positive integer, got {v!r}")


def clan_cyclic(r, m):
    """Ring of m copies of K_r, consecutive blocks fully joined."""
    _check_pos(r=r, m=m)
    edges = []
    for j in range(m):
        base = j * r
        for a in range(r):
            for b in range(a + 1, r):
                edges.append((base + a, base + b))
        nxt = ((j + 1) % m) * r
        for a in range(r):
            for b in range(r):
                edges.append((base + a, nxt + b))
    return Multigraph(m * r, edges)


def clan_cyclic_twisted(r, m):
    """Same ring, closing join made after reversing the first block.

    A join is a complete bipartite linkage, so the twist cannot change the
    graph; kept as an explicit construction for testing that claim.
    """
    _check_pos(r=r, m=m)
    edges = []
    flip = lambda b: r - 1 - b
    for j in range(m):
        base = j * r
        for a in range(r):
            for b in range(a + 1, r):
                edges.append((base + a, base + b))
        last = j == m - 1
        nxt = ((j + 1) % m) * r
        for a in range(r):
            for b in range(r):
                edges.append((base + a, nxt + (flip(b) if last else b)))
    return Multigraph(m * r, edges)


def clan_identity(r, m):
    """Bracelet: ring of K_r blocks, vertex i linked to vertex i of the next block."""
    _check_pos(r=r, m=m)
    edges = []
    for j in range(m):
        base = j * r
        for a in range(r):
            for b in range(a + 1, r):
                edges.append((base + a, base + b))
        nxt = ((j + 1) % m) * r
        for a in range(r):
            edges.append((base + a, nxt + a))
    return Multigraph(m * r, edges)


def circuit(m):
    if not isinstance(m, int) or m < 3:
        raise ValueError("circuit(m) requires m >= 3")
    return Multigraph(m, [(i, (i + 1) % m) for i in range(m)])


def tree(n):
    _check_pos(n=n)
    return Multigraph(n, [(i, i + 1) for i in range(n - 1)])


def complete(r):
    _check_pos(r=r)
    return Multigraph(r, [(a, b) for a in range(r) for b in range(a + 1, r)])


def dipole(k):
    """Two vertices joined by k parallel edges (planar dual of C_k)."""
    return Multigraph(2, [(0, 1)] * k)


def _strip(Ly, Lx, BCy, BCx, diagonals):
    _check_pos(Ly=Ly, Lx=Lx)
    BCy, BCx = _bc(BCy), _bc(BCx)
    if BCy == "twisted":
        raise ValueError("twisted-periodic is only allowed on BCx")
    V = lambda x, y: x * Ly + y
    edges = []
    ymax = Ly if BCy == "periodic" else Ly - 1
    for x in range(Lx):
        for y in range(ymax):
            edges.append((V(x, y), V(x, (y + 1) % Ly)))
    ncols = Lx if BCx != "free" else Lx - 1
    for x in range(ncols):
        wrap = x == Lx - 1
        if wrap and BCx == "twisted":
            img = lambda y: Ly - 1 - y
        else:
            img = lambda y: y
        x2 = (x + 1) % Lx
        for y in range(Ly):
            edges.append((V(x, y), V(x2, img(y))))
        if diagonals:
            for y in range(ymax):
                # face (x,y),(x,y+1),(x+1,y),(x+1,y+1): diagonal (x,y)-(x+1,y+1)
                edges.append((V(x, y), V(x2, img((y + 1) % Ly))))
    return Multigraph(Lx * Ly, edges)


def sq_strip(Ly, Lx, BCy="free", BCx="free"):
    return _strip(Ly, Lx, BCy, BCx, diagonals=False)


def tri_strip(Ly, Lx, BCy="free", BCx="free"):
    return _strip(Ly, Lx, BCy, BCx, diagonals=True)


def faces(Lx, BCx):
    """Number of faces per row, the m of the a(G_m) closed forms."""
    return Lx - 1 if _bc(BCx) == "free" else Lx


def random_multigraph(rng, n_max=8, m_max=10, loop_p=0.1):
    """Random multigraph with 1..n_max vertices and 0..m_max edges.

    Loops appear with probability ``loop_p`` per edge; parallel edges come
    from drawing endpoints with replacement.
    """
    n = rng.randint(1, n_max)
    m = rng.randint(0, m_max)
    edges = []
    for _ in range(m):
        u = rng.randrange(n)
        if n == 1 or rng.random() < loop_p:
            edges.append((u, u))
        else:
            v = rng.randrange(n - 1)
            edges.append((u, v + (v >= u)))
    return Multigraph(n, edges)


def random_corpus(count=200, seed=2024, n_max=8, m_max=10):
    rng = random.Random(seed)
    return [random_multigraph(rng, n_max, m_max) for _ in range(count)]


# ---------------------------------------------------------------- spec strings

@dataclass
class FamilySpec:
    kind: str
    params: dict = field(default_factory=dict)

    def build(self):
        try:
            return self._build(self.params)
        except KeyError as e:
            raise ValueError(f"family {self.kind!r} needs parameter {e.args[0]}") from None

    def _build(self, p):
        need = lambda *ks: [p[k] for k in ks]
        if self.kind == "clan-jn":
            return clan_cyclic(*need("r", "m"))
        if self.kind == "clan-id":
            return clan_identity(*need("r", "m"))
        if self.kind == "circuit":
            return circuit(p["m"])
        if self.kind == "tree":
            return tree(p["n"])
        if self.kind == "complete":
            return complete(p["r"] if "r" in p else p["n"])
        if self.kind == "dipole":
            return dipole(p["k"])
        if self.kind in ("sq-strip", "tri-strip"):
            fn = sq_strip if self.kind == "sq-strip" else tri_strip
            return fn(p["Ly"], p["Lx"], p.get("BCy", "free"), p.get("BCx", "free"))
        if self.kind == "file":
            with open(p["path"]) as fh:
                return Multigraph.from_edge_list(fh.read())
        raise ValueError(f"unknown family kind {self.kind!r}")

    def __str__(self):
        return self.text if hasattr(self, "text") else self.kind


_KINDS = {"circuit": "circuit", "tree": "tree", "complete": "complete", "sq": "sq-strip",
          "tri": "tri-strip", "dipole": "dipole"}


def parse_family(text):
    """Parse ``clan:jn:r=3,m=4``, ``sq:Ly=2,Lx=5,BCy=F,BCx=P``, ``file:path`` ..."""
    s = text.strip()
    if s.startswith("file:"):
        spec = FamilySpec("file", {"path": s[5:]})
        spec.text = s
        return spec
    parts = s.split(":")
    if parts[0] == "clan":
        if len(parts) not in (2, 3) or parts[1] not in ("jn", "id"):
            raise ValueError(f"bad clan spec {text!r}; expected clan:jn:r=..,m=.. or clan:id:...")
        kind = "clan-" + parts[1]
        body = parts[2] if len(parts) == 3 else ""
    elif parts[0] in _KINDS and len(parts) == 2:
        kind = _KINDS[parts[0]]
        body = parts[1]
    else:
        raise ValueError(f"unknown family spec {text!r}")
    params = {}
    for item in filter(None, body.split(",")):
        m = re.fullmatch(r"\s*(\w+)\s*=\s*([\w-]+)\s*", item)
        if not m:
            raise ValueError(f"bad parameter {item!r} in {text!r}")
        k, v = m.groups()
        if k in ("BCy", "BCx"):
            params[k] = _bc(v)
        else:
            try:
                params[k] = int(v)
            except ValueError:
                raise ValueError(f"parameter {k} must be an integer, got {v!r}") from None
    spec = FamilySpec(kind, params)
    spec.text = s
    return spec


def build(text):
    return parse_family(text).build()
