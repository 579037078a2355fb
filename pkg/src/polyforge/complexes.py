"""Face lattices given by vertex sets: generic set families and simplicial complexes."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BadParameter
from .lattice import FaceLattice, build_lattice


@dataclass(frozen=True)
class VertexSetComplex:
    """A vertex-describable polytope as vertex subsets per rank.

    ``faces_by_rank[r + 1]`` lists the rank-``r`` faces (sorted tuples over
    vertices ``0..v-1``) for ``r = -1 .. rank``; the last entry is the single
    greatest face.
    """

    v: int
    faces_by_rank: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def rank(self) -> int:
        return len(self.faces_by_rank) - 2

    def faces(self) -> list[tuple[int, ...]]:
        return [f for row in self.faces_by_rank for f in row]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.faces_by_rank)

    @cached_property
    def lattice(self) -> FaceLattice:
        return lattice_from_vertex_sets(self.faces_by_rank)

    def facets(self) -> tuple[tuple[int, ...], ...]:
        return self.faces_by_rank[-2]


def lattice_from_vertex_sets(faces_by_rank: Sequence[Iterable[Sequence]]) -> FaceLattice:
    """Lattice ordered by inclusion; covers join consecutive ranks.

    Row ``r + 1`` holds the rank-``r`` faces, from the empty face up to the
    greatest face.
    """
    rows = [[tuple(sorted(f)) for f in row] for row in faces_by_rank]
    rank = len(rows) - 2
    ranks = {}
    for r, row in enumerate(rows, start=-1):
        for f in row:
            if (r, f) in ranks:
                raise BadParameter(f"duplicate face {f} in rank {r}")
            ranks[(r, f)] = r
    covers = []
    for r in range(-1, rank):
        upper = [(f, frozenset(f)) for f in rows[r + 2]]
        for lo in rows[r + 1]:
            slo = frozenset(lo)
            for hi, shi in upper:
                if slo < shi:
                    covers.append(((r, lo), (r + 1, hi)))
    vertex_sets = {key: key[1] for key in ranks}
    return build_lattice(rank, covers, ranks, vertex_sets=vertex_sets)


def simplicial_lattice(facets: Iterable[Sequence]) -> FaceLattice:
    """Face lattice of the pure simplicial complex spanned by ``facets``, capped
    with a greatest face (the full vertex set)."""
    facets = sorted({tuple(sorted(f)) for f in facets})
    if not facets:
        raise BadParameter("need at least one facet")
    size = len(facets[0])
    if any(len(f) != size for f in facets):
        raise BadParameter("facets must all have the same number of vertices")
    faces = set()
    for f in facets:
        for k in range(size + 1):
            faces.update(combinations(f, k))
    order = sorted(faces, key=lambda f: (len(f), f))
    ranks = {f: len(f) - 1 for f in order}
    top = ("top",)
    ranks[top] = size
    covers = []
    for f in order:
        if len(f) >= 1:
            for i in range(len(f)):
                covers.append((f[:i] + f[i + 1 :], f))
    covers.extend((f, top) for f in facets)
    all_vertices = tuple(sorted({x for f in facets for x in f}))
    vertex_sets = {f: f for f in order}
    vertex_sets[top] = all_vertices
    return build_lattice(size, covers, ranks, vertex_sets=vertex_sets)


def facet_vertex_sets(L: FaceLattice) -> list[tuple]:
    """Facets of ``L`` as sorted tuples of vertex labels."""
    labels = vertex_labels(L)
    bits = L.vertex_bits()
    return [_bits_to_labels(bits[f], labels) for f in L.faces_of_rank(L.rank - 1)]


def vertex_labels(L: FaceLattice) -> list:
    """Label of each vertex: its stored singleton vertex set, else its face id."""
    out = []
    for f in L.vertices():
        if L.vertex_sets is not None and len(L.vertex_sets[f]) == 1:
            out.append(L.vertex_sets[f][0])
        else:
            out.append(f)
    return out


def _bits_to_labels(b: int, labels: Sequence) -> tuple:
    out = []
    i = 0
    while b:
        if b & 1:
            out.append(labels[i])
        b >>= 1
        i += 1
    return tuple(sorted(out))
