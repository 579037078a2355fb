"""Seed polytopes, torus maps, order complexes, stellar subdivision and 2^K."""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

import numpy as np

from .complexes import (
    VertexSetComplex,
    facet_vertex_sets,
    lattice_from_vertex_sets,
    simplicial_lattice,
)
from .errors import (
    BadParameter,
    NotSimplicial,
    NotVertexDescribable,
    SearchExhausted,
    TooLargeForExplicit,
    ValidationFailed,
)
from .lattice import FaceLattice, build_lattice, flag_graph, validate_polytope
from .properties import schlafli, vertex_set_complex
from .symmetry import AutomorphismGroup, automorphisms, closure

DEFAULT_THRESHOLD = 16


def _checked(L: FaceLattice, what: str) -> FaceLattice:
    rep = validate_polytope(L)
    if not rep.ok:
        raise ValidationFailed(f"{what} is not a polytope: {'; '.join(rep.failures[:3])}", rep)
    return L


# seeds ---------------------------------------------------------------------------


def simplex(d: int) -> FaceLattice:
    """The d-simplex: all subsets of d + 1 vertices."""
    if d < 0:
        raise BadParameter("simplex needs d >= 0")
    if d == 0:
        return build_lattice(0, [("e", 0)], {"e": -1, 0: 0}, vertex_sets={0: (0,)})
    return simplicial_lattice(combinations(range(d + 1), d))


def polygon(p: int) -> FaceLattice:
    if p < 3:
        raise BadParameter(f"polygon needs p >= 3, got p={p}")
    ranks = {"e": -1}
    ranks.update({("v", i): 0 for i in range(p)})
    ranks.update({("e", i): 1 for i in range(p)})
    ranks["P"] = 2
    covers = [("e", ("v", i)) for i in range(p)]
    for i in range(p):
        covers += [(("v", i), ("e", i)), (("v", (i + 1) % p), ("e", i)), (("e", i), "P")]
    return build_lattice(2, covers, ranks)


def hypercube(d: int) -> FaceLattice:
    """The d-cube from its coordinate faces: words over {0, 1, *}, rank = number of stars."""
    if d < 0:
        raise BadParameter("hypercube needs d >= 0")
    words = sorted(("".join(w) for w in product("01*", repeat=d)), key=lambda w: (w.count("*"), w))
    ranks = {"": -1}
    ranks.update({w: w.count("*") for w in words})
    covers = [("", w) for w in words if "*" not in w]
    for w in words:
        for i, c in enumerate(w):
            if c == "*":
                covers += [(w[:i] + b + w[i + 1 :], w) for b in "01"]
    if d == 0:
        return build_lattice(0, [("", "0")], {"": -1, "0": 0})
    return build_lattice(d, covers, ranks)


def cross_polytope(d: int) -> FaceLattice:
    """Simplicial d-orthoplex; vertices 2i and 2i+1 are the pair +-e_i."""
    if d < 1:
        raise BadParameter("cross polytope needs d >= 1")
    facets = [tuple(2 * i + s for i, s in enumerate(signs)) for signs in product((0, 1), repeat=d)]
    return simplicial_lattice(facets)


def pyramid(p: int) -> FaceLattice:
    """Pyramid over a p-gon (apex p); p = 4 is the square pyramid."""
    if p < 3:
        raise BadParameter("pyramid needs p >= 3")
    base = [(i, (i + 1) % p) for i in range(p)]
    rows = [
        [()],
        [(i,) for i in range(p + 1)],
        base + [(i, p) for i in range(p)],
        [tuple(range(p))] + [(a, b, p) for a, b in base],
        [tuple(range(p + 1))],
    ]
    return lattice_from_vertex_sets(rows)


# torus maps ----------------------------------------------------------------------


@dataclass(frozen=True)
class TorusMapSpec:
    family: str
    s: int

    def __post_init__(self):
        if self.family not in ("44", "36"):
            raise BadParameter(f"torus family must be '44' or '36', got {self.family!r}")
        if self.s < 2:
            raise BadParameter(f"torus map needs s >= 2, got s={self.s}")


def torus_map(spec: TorusMapSpec) -> FaceLattice:
    """{4,4}_(s,0) or {3,6}_(s,0) on vertices Z_s x Z_s."""
    s = spec.s
    cells = [(x, y) for x in range(s) for y in range(s)]

    def V(x, y):
        return ("v", x % s, y % s)

    ranks = {"bottom": -1}
    ranks.update({V(x, y): 0 for x, y in cells})
    covers = [("bottom", V(x, y)) for x, y in cells]
    if spec.family == "44":
        steps = {0: (1, 0), 1: (0, 1)}
    else:
        steps = {0: (1, 0), 1: (0, 1), 2: (1, 1)}

    def E(d, x, y):
        return ("e", d, x % s, y % s)

    for d, (dx, dy) in steps.items():
        for x, y in cells:
            ranks[E(d, x, y)] = 1
            covers += [(V(x, y), E(d, x, y)), (V(x + dx, y + dy), E(d, x, y))]
    if spec.family == "44":
        polys = {("q", x, y): [E(0, x, y), E(0, x, y + 1), E(1, x, y), E(1, x + 1, y)] for x, y in cells}
    else:
        polys = {}
        for x, y in cells:
            polys[("u", x, y)] = [E(0, x, y), E(1, x + 1, y), E(2, x, y)]
            polys[("d", x, y)] = [E(1, x, y), E(0, x, y + 1), E(2, x, y)]
    for key, edges in polys.items():
        ranks[key] = 2
        covers += [(e, key) for e in edges]
        covers.append((key, "top"))
    ranks["top"] = 3
    L = build_lattice(3, covers, ranks)
    return _checked(L, f"{{{spec.family[0]},{spec.family[1]}}}_({s},0)")


def torus44(s: int) -> FaceLattice:
    return torus_map(TorusMapSpec("44", s))


def torus36(s: int) -> FaceLattice:
    return torus_map(TorusMapSpec("36", s))


# order complex and subdivision ---------------------------------------------------


def order_complex(L: FaceLattice) -> FaceLattice:
    """Chains of proper faces, capped with a greatest face; vertex labels are face ids of L."""
    if L.rank < 1:
        raise BadParameter("order complex needs rank >= 1")
    fg = flag_graph(L)
    facets = [tuple(int(x) for x in row[1:-1]) for row in fg.flags]
    return _checked(simplicial_lattice(facets), "order complex")


def _simplicial_facets(L: FaceLattice) -> list[tuple]:
    n = L.rank
    for f in L.faces_of_rank(n - 1):
        if len(L.downset(f)) != 2**n:
            raise NotSimplicial(f"facet {f} is not a simplex")
    facets = facet_vertex_sets(L)
    if len(set(facets)) != len(facets):
        raise NotVertexDescribable("two facets share a vertex set")
    if any(len(f) != n for f in facets):
        raise NotSimplicial("facet vertex count differs from rank")
    return facets


def stellar_subdivide_facet(L: FaceLattice, facet: int | str = "min") -> FaceLattice:
    """Cone the boundary of one simplex facet from a new central vertex.

    ``facet`` is a face id of rank n-1, or ``"min"`` for the facet whose sorted
    vertex labels are lexicographically least.  The new vertex is labelled one
    more than the largest existing label.
    """
    facets = _simplicial_facets(L)
    if facet == "min":
        chosen = min(facets)
    else:
        ids = list(L.faces_of_rank(L.rank - 1))
        if facet not in ids:
            raise BadParameter(f"face {facet} is not a facet")
        chosen = facets[ids.index(facet)]
    z = max(x for f in facets for x in f) + 1
    new = [f for f in facets if f != chosen]
    new += [tuple(sorted(r + (z,))) for r in combinations(chosen, len(chosen) - 1)]
    return _checked(simplicial_lattice(new), "stellar subdivision")


def vertex_valences(L: FaceLattice) -> list[int]:
    """Number of edges at each vertex, in vertex id order."""
    return [len(L.up[v]) for v in L.vertices()]


def symmetry_breaking_pipeline(s: int) -> FaceLattice:
    """{3,6}_(s,0) -> order complex -> subdivide the lexicographically least facet."""
    base = torus36(s)
    p = schlafli(base)
    assert p is not None and len(set(p)) == len(p), f"Schläfli entries must be distinct, got {p}"
    return stellar_subdivide_facet(order_complex(base), "min")


# 2^K ----------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerFace:
    """Face F(eps) of 2^K as a word over {0, 1, *}.

    Position i is ``*`` when vertex i of K lies in F; otherwise it is the fixed
    bit eps_i.  The empty (least) face has ``word = None``.
    """

    base: tuple[int, ...]
    word: str | None

    @property
    def epsilon_restriction(self) -> str:
        return "" if self.word is None else self.word.replace("*", "")


def materialization_threshold(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("POLYFORGE_THRESHOLD")
    return int(env) if env else DEFAULT_THRESHOLD


@dataclass
class PowerPolytope:
    K: VertexSetComplex
    mode: str
    lattice: FaceLattice | None = None
    faces: list[PowerFace] | None = None
    # per face id: index of the base face of K and the fixed bits as an int
    k_index: np.ndarray | None = field(default=None, repr=False)
    bits: np.ndarray | None = field(default=None, repr=False)

    @property
    def v(self) -> int:
        return self.K.v

    @property
    def rank(self) -> int:
        return self.K.rank + 1

    def f_vector(self) -> tuple[int, ...]:
        counts = [1]
        for row in self.K.faces_by_rank:
            counts.append(sum(2 ** (self.v - len(F)) for F in row))
        return tuple(counts)

    def _k_group(self) -> AutomorphismGroup:
        return automorphisms(self.K.lattice)

    def flag_count(self) -> int:
        return 2**self.v * len(flag_graph(self.K.lattice))

    def group_order(self) -> int:
        return 2**self.v * self._k_group().order

    def flag_orbit_count(self) -> int:
        return len(flag_graph(self.K.lattice)) // self._k_group().order

    def face_orbit_counts(self) -> dict[int, int]:
        """j-face orbits for j = 0..n-1: (j-1)-face orbits of K under its group."""
        from .symmetry import face_orbits

        G = self._k_group()
        out = {0: 1}
        for j in range(1, self.rank):
            out[j] = face_orbits(self.K.lattice, G, j - 1).count
        return out


def _mask(face, v) -> int:
    m = 0
    for i in face:
        m |= 1 << (v - 1 - i)
    return m


def _submasks_ascending(comp: int) -> list[int]:
    out = []
    s = comp
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & comp
    out.reverse()
    return out


def power_2k(K: VertexSetComplex | FaceLattice, mode: str = "explicit", threshold: int | None = None,
             validate: bool = True) -> PowerPolytope:
    """The generalized cube 2^K, materialized (``explicit``) or by formulas (``virtual``).

    Faces are F(eps) for faces F of K; F(eps) <= F'(eps') iff F <= F' and eps,
    eps' agree off F'.  Ids: rank, then K-face id, then the fixed bits read as
    a binary number with vertex 0 most significant.
    """
    if isinstance(K, FaceLattice):
        try:
            K = vertex_set_complex(K)
        except NotVertexDescribable:
            raise
    if mode not in ("explicit", "virtual"):
        raise BadParameter(f"mode must be explicit or virtual, got {mode!r}")
    if mode == "virtual":
        return PowerPolytope(K, "virtual")
    limit = materialization_threshold(threshold)
    if K.v > limit:
        raise TooLargeForExplicit(f"v = {K.v} exceeds the explicit threshold {limit}")

    v = K.v
    full = (1 << v) - 1
    KL = K.lattice
    kfaces = [KL.vertex_sets[k] for k in range(KL.n_faces)]
    kmasks = [_mask(F, v) for F in kfaces]

    ids = {}
    k_index = [-1]
    bits = [0]
    down = [[]]
    face_rank = [-1]
    for k in range(KL.n_faces):
        for e in _submasks_ascending(full & ~kmasks[k]):
            ids[(k, e)] = len(k_index)
            k_index.append(k)
            bits.append(e)
            down.append([])
            face_rank.append(int(KL.face_rank[k]) + 1)
    for fid in range(1, len(k_index)):
        k, e = k_index[fid], bits[fid]
        if KL.face_rank[k] == -1:
            down[fid].append(0)
        for k2 in KL.up[k]:
            down[ids[(k2, e & ~kmasks[k2])]].append(fid)

    words = [None]
    faces = [PowerFace((), None)]
    for fid in range(1, len(k_index)):
        k, e = k_index[fid], bits[fid]
        m = kmasks[k]
        w = "".join("*" if m >> (v - 1 - i) & 1 else str(e >> (v - 1 - i) & 1) for i in range(v))
        words.append(w)
        faces.append(PowerFace(kfaces[k], w))
    L = FaceLattice(K.rank + 1, face_rank, down, keys=words)
    if validate:
        _checked(L, "2^K")
    return PowerPolytope(K, "explicit", L, faces, np.array(k_index), np.array(bits, dtype=np.int64))


def _power_lookup(P: PowerPolytope):
    key = P.k_index.astype(np.int64) * (1 << P.v) + P.bits
    key[0] = -1
    return key


def bit_flip(P: PowerPolytope, k: int) -> np.ndarray:
    """Face permutation of explicit 2^K toggling coordinate k (vertex k of K)."""
    key = _power_lookup(P)
    KL = P.K.lattice
    kmasks = np.array([_mask(KL.vertex_sets[i], P.v) for i in range(KL.n_faces)], dtype=np.int64)
    flip = 1 << (P.v - 1 - k)
    new_bits = np.where(kmasks[P.k_index] & flip, P.bits, P.bits ^ flip)
    new_key = P.k_index.astype(np.int64) * (1 << P.v) + new_bits
    new_key[0] = -1
    perm = np.searchsorted(key, new_key)
    assert (key[perm] == new_key).all()
    return perm.astype(np.int32)


def lift_automorphism(P: PowerPolytope, k_perm) -> np.ndarray:
    """The automorphism F(eta) -> phi(F)(eta_phi) of 2^K induced by phi in Gamma(K)."""
    KL = P.K.lattice
    k_perm = np.asarray(k_perm)
    v = P.v
    vstart = KL.faces_of_rank(0).start
    vert_perm = [int(k_perm[vstart + i]) - vstart for i in range(v)]
    new_bits = np.zeros_like(P.bits)
    for i, j in enumerate(vert_perm):
        src = 1 << (v - 1 - i)
        dst = 1 << (v - 1 - j)
        new_bits |= np.where(P.bits & src, dst, 0)
    new_k = np.where(P.k_index >= 0, k_perm[np.maximum(P.k_index, 0)], -1)
    key = _power_lookup(P)
    new_key = new_k.astype(np.int64) * (1 << v) + new_bits
    new_key[0] = -1
    perm = np.searchsorted(key, new_key)
    assert (key[perm] == new_key).all()
    return perm.astype(np.int32)


def power_group(P: PowerPolytope) -> AutomorphismGroup:
    """Group generated by the v bit flips and the lifts of Gamma(K)'s generators."""
    if P.mode != "explicit":
        raise BadParameter("power_group needs explicit 2^K")
    gens = [bit_flip(P, k) for k in range(P.v)]
    GK = automorphisms(P.K.lattice)
    gens += [lift_automorphism(P, p) for p in GK.generator_perms]
    return closure(P.lattice, gens)


# asymmetric fixture --------------------------------------------------------------

TETRAHEDRON = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def find_small_asymmetric_fixture(seed: int = 1, max_vertices: int = 10, max_attempts: int = 2000):
    """Seeded search over stacked 2-spheres for one with trivial automorphism group.

    Each attempt starts from the tetrahedron boundary and subdivides random
    facets, testing the group after each step.  Returns the VertexSetComplex.
    """
    if not 4 <= max_vertices <= 12:
        raise BadParameter("max_vertices must lie in 4..12")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        facets = list(TETRAHEDRON)
        nv = 4
        while nv < max_vertices:
            chosen = facets[rng.randrange(len(facets))]
            facets.remove(chosen)
            facets += [tuple(sorted(r + (nv,))) for r in combinations(chosen, 2)]
            facets.sort()
            nv += 1
            L = simplicial_lattice(facets)
            if automorphisms(L).order == 1:
                return vertex_set_complex(L)
    raise SearchExhausted(f"no asymmetric stacked sphere with <= {max_vertices} vertices (seed {seed})")


def stacked_sphere(facet_choices) -> FaceLattice:
    """Stacked 2-sphere: subdivide the listed facet positions in turn."""
    facets = list(TETRAHEDRON)
    nv = 4
    for pos in facet_choices:
        chosen = facets.pop(pos)
        facets += [tuple(sorted(r + (nv,))) for r in combinations(chosen, 2)]
        facets.sort()
        nv += 1
    return simplicial_lattice(facets)


def hypercube_f_vector(d: int) -> tuple[int, ...]:
    return (1,) + tuple(2 ** (d - j) * comb(d, j) for j in range(d)) + (1,)
