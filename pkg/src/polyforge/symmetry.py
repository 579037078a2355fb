"""Automorphism groups, isomorphism and orbit partitions via flag-graph propagation.

An automorphism of a polytope is fixed by the image of one flag.  We take flag
0 (lexicographically least) as base, keep only candidate image flags with the
same stable colour under iterated refinement of the coloured flag graph, and
propagate each candidate across the i-adjacencies.  A candidate is accepted
iff propagation never clashes, on flags or on the induced face map.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from . import kernels
from .lattice import FaceLattice, FlagGraph, SectionView, facet_as_polytope, flag_graph, vertex_figure
from .properties import f_vector, polygon_sizes


@dataclass(frozen=True)
class Automorphism:
    face_perm: np.ndarray

    def __call__(self, face):
        return int(self.face_perm[face])


@dataclass
class AutomorphismGroup:
    """All elements of a group of face permutations of ``lattice``.

    ``perms[k]`` is an element; rows are sorted by ``base_images[k]``, the
    index of the image of the base flag, so row 0 is the identity.
    ``generators`` holds row indices of a generating subset.
    """

    lattice: FaceLattice
    perms: np.ndarray
    base_images: np.ndarray
    generators: list[int]

    @property
    def order(self) -> int:
        return len(self.perms)

    def __len__(self):
        return len(self.perms)

    def __iter__(self):
        return (Automorphism(p) for p in self.perms)

    @property
    def generator_perms(self) -> np.ndarray:
        return self.perms[self.generators]

    def as_set(self) -> set[bytes]:
        return {np.ascontiguousarray(p, dtype=np.int32).tobytes() for p in self.perms}

    def __contains__(self, perm) -> bool:
        return np.ascontiguousarray(perm, dtype=np.int32).tobytes() in self.as_set()


@dataclass
class OrbitPartition:
    kind: str
    classes: list[list[int]]

    @property
    def count(self) -> int:
        return len(self.classes)

    def __len__(self):
        return len(self.classes)


# colour refinement ---------------------------------------------------------------


def _refine(adj: np.ndarray, colours: np.ndarray) -> np.ndarray:
    """Stable colouring of a flag graph with coloured (by rank) edges."""
    _, col = np.unique(colours, axis=0, return_inverse=True)
    col = col.reshape(-1)
    n_col = col.max() + 1 if len(col) else 0
    while True:
        sig = np.column_stack([col] + [col[adj[:, i]] for i in range(adj.shape[1])])
        _, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.reshape(-1)
        n_new = new.max() + 1 if len(new) else 0
        col = new
        if n_new == n_col:
            return col
        n_col = n_new


def _initial_colours(L: FaceLattice) -> np.ndarray:
    sizes = polygon_sizes(L)
    if sizes.shape[1] == 0:
        return np.zeros((len(sizes), 1), dtype=np.int64)
    return sizes


def flag_colours(L: FaceLattice) -> np.ndarray:
    if "colours" not in L._cache:
        fg = flag_graph(L)
        L._cache["colours"] = _refine(fg.adj, _initial_colours(L))
    return L._cache["colours"]


# automorphisms -------------------------------------------------------------------


def _propagate(flags, adj, n_faces, base, targets):
    """Run the propagation kernel for each target; yield (target, face_img)."""
    flags = np.ascontiguousarray(flags, dtype=np.int32)
    adj = np.ascontiguousarray(adj, dtype=np.int32)
    flag_img = np.empty(len(flags), dtype=np.int32)
    face_img = np.empty(n_faces, dtype=np.int32)
    queue = np.empty(len(flags), dtype=np.int32)
    for t in targets:
        if kernels.extend_flag_map(flags, adj, int(base), int(t), flag_img, face_img, queue):
            yield int(t), face_img.copy()


def automorphisms(L: FaceLattice) -> AutomorphismGroup:
    """The full automorphism group of a validated polytope (memoized)."""
    if "group" in L._cache:
        return L._cache["group"]
    fg = flag_graph(L)
    col = flag_colours(L)
    targets = np.flatnonzero(col == col[0])
    found = list(_propagate(fg.flags, fg.adj, L.n_faces, 0, targets))
    images = np.array([t for t, _ in found], dtype=np.int64)
    perms = np.array([p for _, p in found], dtype=np.int32).reshape(len(found), L.n_faces)
    assert images[0] == 0 and (perms[0] == np.arange(L.n_faces)).all()
    # each automorphism is fixed by the image of one flag: orbits all have |G| flags
    assert len(fg) % len(perms) == 0
    G = _make_group(L, fg, perms, images)
    L._cache["group"] = G
    return G


def _make_group(L, fg: FlagGraph, perms, images) -> AutomorphismGroup:
    order = np.argsort(images, kind="stable")
    perms = perms[order]
    images = images[order]
    return AutomorphismGroup(L, perms, images, _pick_generators(fg, perms, images))


def _pick_generators(fg: FlagGraph, perms, images) -> list[int]:
    # The action on flags is free, so a subgroup is known by the orbit of the
    # base flag; grow generators until that orbit covers every element.
    target = set(int(t) for t in images)
    reached = {0}
    gens = []
    flag_perms = []
    for k, img in enumerate(images):
        if len(reached) == len(target):
            break
        if int(img) in reached:
            continue
        gens.append(k)
        flag_perms.append(fg.act(perms[k]).tolist())
        todo = list(reached)
        while todo:
            t = todo.pop()
            for fp in flag_perms:
                u = fp[t]
                if u not in reached:
                    reached.add(u)
                    todo.append(u)
    return gens


def group_from_perms(L: FaceLattice, perms) -> AutomorphismGroup:
    """Wrap a list of face permutations forming a group (duplicates dropped)."""
    fg = flag_graph(L)
    perms = np.asarray(perms, dtype=np.int32).reshape(-1, L.n_faces)
    images = fg.index_of(perms[:, fg.flags[0]])
    _, keep = np.unique(images, return_index=True)
    return _make_group(L, fg, perms[keep], images[keep])


def closure(L: FaceLattice, generators) -> AutomorphismGroup:
    """The group generated by the given face permutations."""
    fg = flag_graph(L)
    base = fg.flags[0]
    gens = [np.asarray(g, dtype=np.int32) for g in generators]
    ident = np.arange(L.n_faces, dtype=np.int32)
    elems = {0: ident}
    todo = [ident]
    while todo:
        e = todo.pop()
        for g in gens:
            h = g[e]
            img = int(fg.index_of(h[base])[0])
            if img < 0:
                raise ValueError("generator is not an automorphism")
            if img not in elems:
                elems[img] = h
                todo.append(h)
    images = np.array(sorted(elems), dtype=np.int64)
    perms = np.array([elems[i] for i in images], dtype=np.int32)
    return _make_group(L, fg, perms, images)


def isomorphic(L1: FaceLattice, L2: FaceLattice, witness: bool = False):
    """Decide isomorphism; with ``witness=True`` return ``(bool, face_map or None)``."""
    ok, perm = _isomorphism(L1, L2)
    return (ok, perm) if witness else ok


def _isomorphism(L1: FaceLattice, L2: FaceLattice):
    if L1.rank != L2.rank or f_vector(L1) != f_vector(L2):
        return False, None
    fg1, fg2 = flag_graph(L1), flag_graph(L2)
    n1, n2 = len(fg1), len(fg2)
    if n1 != n2:
        return False, None
    adj = np.vstack([fg1.adj, fg2.adj + n1])
    init = np.vstack([_initial_colours(L1), _initial_colours(L2)])
    col = _refine(adj, init)
    if not np.array_equal(np.sort(col[:n1]), np.sort(col[n1:])):
        return False, None
    flags = np.vstack([fg1.flags, fg2.flags + L1.n_faces])
    targets = n1 + np.flatnonzero(col[n1:] == col[0])
    for _, face_img in _propagate(flags, adj, L1.n_faces + L2.n_faces, 0, targets):
        return True, face_img[: L1.n_faces] - L1.n_faces
    return False, None


# orbits -------------------------------------------------------------------------


def _partition(size: int, perms, kind: str) -> OrbitPartition:
    parent = np.arange(size, dtype=np.int32)
    for p in perms:
        kernels.union_perm(parent, np.ascontiguousarray(p, dtype=np.int32))
    kernels.resolve(parent)
    classes = defaultdict(list)
    for x, r in enumerate(parent.tolist()):
        classes[r].append(x)
    return OrbitPartition(kind, [classes[r] for r in sorted(classes)])


def flag_orbits(L: FaceLattice, G: AutomorphismGroup | None = None) -> OrbitPartition:
    G = automorphisms(L) if G is None else G
    fg = flag_graph(L)
    perms = [fg.act(p) for p in G.generator_perms]
    return _partition(len(fg), perms, "flags")


def face_orbits(L: FaceLattice, G: AutomorphismGroup | None, j: int) -> OrbitPartition:
    """Orbits on rank-j faces; class members are face ids."""
    G = automorphisms(L) if G is None else G
    faces = L.faces_of_rank(j)
    lo = faces.start
    perms = [p[lo : faces.stop] - lo for p in G.generator_perms]
    part = _partition(len(faces), perms, f"faces-of-rank-{j}")
    part.classes = [[lo + x for x in c] for c in part.classes]
    return part


def vertex_stabilizer(L: FaceLattice, G: AutomorphismGroup | None, v: int) -> AutomorphismGroup:
    G = automorphisms(L) if G is None else G
    keep = G.perms[:, v] == v
    return _make_group(L, flag_graph(L), G.perms[keep], G.base_images[keep])


def induced_action(G: AutomorphismGroup, S: SectionView) -> AutomorphismGroup:
    """Restrict a group stabilizing the section's bounds to the section lattice."""
    pos = np.full(G.lattice.n_faces, -1, dtype=np.int64)
    pos[S.parent_ids] = np.arange(S.n_faces)
    restricted = pos[G.perms[:, S.parent_ids]]
    if (restricted < 0).any():
        raise ValueError("group does not stabilize the section")
    return group_from_perms(S, restricted)


def is_regular(L: FaceLattice) -> bool:
    return automorphisms(L).order == len(flag_graph(L))


def is_vertex_transitive(L: FaceLattice) -> bool:
    return face_orbits(L, automorphisms(L), 0).count == 1


def is_semi_regular(L: FaceLattice) -> bool:
    """Regular facets and a vertex-transitive group."""
    if not is_vertex_transitive(L):
        return False
    return all(is_regular(facet_as_polytope(L, f)) for f in L.faces_of_rank(L.rank - 1))


def stabilizer_on_vertex_figure(L: FaceLattice, v: int, G: AutomorphismGroup | None = None):
    """(vertex-figure at v, stabilizer of v acting on it)."""
    S = vertex_figure(L, v)
    return S, induced_action(vertex_stabilizer(L, G, v), S)
