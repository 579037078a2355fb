"""Numeric invariants and structural predicates of face lattices."""
from __future__ import annotations

import numpy as np

from .complexes import VertexSetComplex
from .errors import NotVertexDescribable
from .lattice import FaceLattice, facet_as_polytope, flag_graph


def f_vector(L: FaceLattice) -> tuple[int, ...]:
    """Face counts (f_-1, f_0, ..., f_n)."""
    return tuple(len(L.faces_of_rank(r)) for r in range(-1, L.rank + 1))


def polygon_sizes(L: FaceLattice) -> np.ndarray:
    """For each flag and j = 1..n-1, the size p_j of the polygon G_{j+1}/G_{j-2}.

    Walks the alternating (j-1, j)-adjacency cycle through every flag at once;
    a 2p-cycle means a p-gon.
    """
    fg = flag_graph(L)
    adj = fg.adj
    n_flags = len(fg)
    out = np.zeros((n_flags, max(L.rank - 1, 0)), dtype=np.int64)
    start = np.arange(n_flags)
    for j in range(1, L.rank):
        t = start.copy()
        size = np.zeros(n_flags, dtype=np.int64)
        steps = 0
        while (size == 0).any():
            t = adj[adj[t, j - 1], j]
            steps += 1
            size[(size == 0) & (t == start)] = steps
        out[:, j - 1] = size
    return out


def schlafli(L: FaceLattice) -> tuple[int, ...] | None:
    """Schläfli type {p_1, ..., p_{n-1}}, or None if ``L`` is not equivelar."""
    sizes = polygon_sizes(L)
    if len(sizes) == 0:
        return ()
    if (sizes == sizes[0]).all():
        return tuple(int(p) for p in sizes[0])
    return None


def is_equivelar(L: FaceLattice) -> bool:
    return schlafli(L) is not None


def vertex_set_complex(L: FaceLattice) -> VertexSetComplex:
    """The set-family form of ``L``; raises NotVertexDescribable if there is none.

    Requires the vertex-set map to be injective on proper faces and to be an
    order embedding (F <= G iff V_F is a subset of V_G).
    """
    bits = L.vertex_bits()
    proper = range(L.faces_of_rank(0).start, L.top)
    seen = {}
    for f in proper:
        if bits[f] in seen:
            raise NotVertexDescribable(f"faces {seen[bits[f]]} and {f} have the same vertex set")
        seen[bits[f]] = f

    above = {v: L.upset(v) for v in L.vertices()}
    below = L.below_bits()
    v0 = L.faces_of_rank(0).start
    for g in proper:
        bg = bits[g]
        b = bg
        pos = 0
        while b:
            if b & 1:
                for f in above[v0 + pos]:
                    if f != L.top and bits[f] & ~bg == 0 and not below[g] >> f & 1:
                        raise NotVertexDescribable(
                            f"vertex set of face {f} lies inside that of face {g} but {f} is not below {g}"
                        )
            b >>= 1
            pos += 1

    nv = len(L.vertices())
    rows = []
    for r in range(-1, L.rank + 1):
        row = []
        for f in L.faces_of_rank(r):
            row.append(tuple(i for i in range(nv) if bits[f] >> i & 1))
        rows.append(tuple(row))
    return VertexSetComplex(nv, tuple(rows))


def is_vertex_describable(L: FaceLattice) -> bool:
    try:
        vertex_set_complex(L)
    except NotVertexDescribable:
        return False
    return True


def lattice_witness(L: FaceLattice):
    """A pair of faces without a unique meet, or None if ``L`` is a lattice.

    A finite poset with a greatest face in which all meets exist is a lattice,
    so joins need no separate check.  Two faces with no common vertex meet in
    the least face, which leaves only pairs sharing a vertex.
    """
    below = L.below_bits()
    vbits = L.vertex_bits()
    v0 = L.faces_of_rank(0).start
    above = {v: L.upset(v) for v in L.vertices()}
    for a in range(L.faces_of_rank(1).start, L.top):
        candidates = set()
        b_ = vbits[a]
        pos = 0
        while b_:
            if b_ & 1:
                candidates.update(above[v0 + pos])
            b_ >>= 1
            pos += 1
        for b in candidates:
            if b <= a or b == L.top or below[b] >> a & 1:
                continue
            common = below[a] & below[b]
            m = common.bit_length() - 1  # highest id, so highest rank
            if below[m] != common:
                return a, b
    return None


def is_lattice(L: FaceLattice) -> bool:
    return lattice_witness(L) is None


def is_equifacetted(L: FaceLattice) -> bool:
    from .symmetry import isomorphic

    facets = list(L.faces_of_rank(L.rank - 1))
    if len(facets) <= 1:
        return True
    ref = facet_as_polytope(L, facets[0])
    return all(isomorphic(ref, facet_as_polytope(L, f)) for f in facets[1:])


def euler_characteristic(L: FaceLattice) -> int:
    """Alternating sum of proper face counts f_0 - f_1 + f_2 - ..."""
    return sum((-1) ** r * len(L.faces_of_rank(r)) for r in range(0, L.rank))
