"""Exact Tutte and Potts polynomials for recursive graph families, with
their chromatic, flow and reliability specializations, counting
valuations, growth constants and zero loci."""
from __future__ import annotations

__version__ = "0.1.0"

from .families import (circuit, clan_cyclic, clan_identity, complete, parse_family,
                       sq_strip, tree, tri_strip)
from .multigraph import Multigraph
from .polynomial import BiPoly, RootFindingError, UniPoly, roots
from .specializations import acyclic_count, chromatic, flow, reliability, valuations
from .tutte import GuardError, potts, tutte, tutte_dc, tutte_oracle, z_from_t

__all__ = [
    "BiPoly", "GuardError", "Multigraph", "RootFindingError", "UniPoly", "acyclic_count",
    "chromatic", "circuit", "clan_cyclic", "clan_identity", "complete", "flow", "parse_family",
    "potts", "reliability", "roots", "sq_strip", "tree", "tri_strip", "tutte", "tutte_dc",
    "tutte_oracle", "valuations", "z_from_t",
]
