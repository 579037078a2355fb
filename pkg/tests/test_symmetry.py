import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyforge import _fallback
from polyforge import constructions as C
from polyforge import kernels
from polyforge.lattice import flag_graph
from polyforge.symmetry import (
    automorphisms,
    closure,
    face_orbits,
    flag_orbits,
    is_regular,
    is_semi_regular,
    is_vertex_transitive,
    isomorphic,
    stabilizer_on_vertex_figure,
    vertex_stabilizer,
)

from conftest import CORPUS_NAMES, corpus_item

try:
    from polyforge import _kernels
except ImportError:  # extension not built
    _kernels = None


def is_face_automorphism(L, perm):
    covers = set(L.covers())
    return sorted(perm) == list(range(L.n_faces)) and {(int(perm[a]), int(perm[b])) for a, b in covers} == covers


# brute-force oracles ----------------------------------------------------------


def test_cube_group_matches_vertex_permutation_search():
    # every automorphism of the cube is fixed by its action on the 8 vertices,
    # so count vertex permutations that preserve the edge graph
    L = C.hypercube(3)
    verts = list(L.vertices())
    edges = {frozenset(L.down[e]) for e in L.faces_of_rank(1)}
    count = 0
    for p in itertools.permutations(verts):
        m = dict(zip(verts, p))
        if all(frozenset(m[x] for x in e) in edges for e in edges):
            count += 1
    assert count == 48
    assert automorphisms(L).order == count


def test_4cube_group_is_hyperoctahedral():
    L = C.hypercube(4)
    index = {k: i for i, k in enumerate(L.keys)}
    G = automorphisms(L)
    swap = {"0": "1", "1": "0", "*": "*"}
    found = 0
    for perm in itertools.permutations(range(4)):
        for signs in itertools.product((0, 1), repeat=4):
            img = np.empty(L.n_faces, dtype=np.int32)
            for f, w in enumerate(L.keys):
                if w == "" or f == L.top:
                    img[f] = f
                    continue
                out = [w[perm[i]] for i in range(4)]
                out = "".join(swap[c] if s else c for c, s in zip(out, signs))
                img[f] = index[out]
            assert is_face_automorphism(L, img)
            assert img in G
            found += 1
    assert found == 384 == G.order


@pytest.mark.parametrize(
    "name,order",
    [
        ("triangle", 6),
        ("pentagon", 10),
        ("tetrahedron", 24),
        ("octahedron", 48),
        ("square pyramid", 8),
        ("{4,4}_(3,0)", 72),
        ("{3,6}_(3,0)", 108),
        ("fixture", 1),
    ],
)
def test_group_orders(name, order):
    assert automorphisms(corpus_item(name)).order == order


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_every_element_is_an_automorphism(name):
    L = corpus_item(name)
    G = automorphisms(L)
    for p in G.perms[:50]:
        assert is_face_automorphism(L, p)
    assert (G.perms[0] == np.arange(L.n_faces)).all()


@pytest.mark.parametrize("name", ["cube", "octahedron", "{4,4}_(3,0)", "square pyramid"])
def test_generators_generate(name):
    L = corpus_item(name)
    G = automorphisms(L)
    assert closure(L, G.generator_perms).as_set() == G.as_set()


# isomorphism ------------------------------------------------------------------


def test_isomorphic_cube_and_power_triangle():
    P = C.power_2k(C.polygon(3))
    ok, face_map = isomorphic(P.lattice, C.hypercube(3), witness=True)
    assert ok
    H = C.hypercube(3)
    mapped = {(int(face_map[a]), int(face_map[b])) for a, b in P.lattice.covers()}
    assert mapped == set(H.covers())


def test_not_isomorphic_dual_pair_by_shape():
    assert not isomorphic(C.hypercube(3), C.cross_polytope(3))
    assert isomorphic(C.hypercube(3), C.hypercube(3))


def test_power_square_is_not_4cube():
    # 2^square has rank 3; it is the torus map {4,4}_(4,0)
    L = C.power_2k(C.polygon(4)).lattice
    assert not isomorphic(L, C.hypercube(4))
    assert isomorphic(L, C.torus44(4))


def test_isomorphism_ignores_labelling():
    a = C.stacked_sphere([0, 3])
    b = C.stacked_sphere([0, 3])
    assert isomorphic(a, b)
    assert not isomorphic(corpus_item("fixture"), C.cross_polytope(3))


# orbits -----------------------------------------------------------------------


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_orbit_counting(name):
    L = corpus_item(name)
    G = automorphisms(L)
    orbits = flag_orbits(L, G)
    assert G.order * orbits.count == len(flag_graph(L))
    assert all(len(c) == G.order for c in orbits.classes)


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_orbit_stabilizer(name):
    L = corpus_item(name)
    G = automorphisms(L)
    for cls in face_orbits(L, G, 0).classes:
        assert len(cls) * vertex_stabilizer(L, G, cls[0]).order == G.order


def test_square_pyramid_orbits():
    L = C.pyramid(4)
    G = automorphisms(L)
    assert flag_orbits(L, G).count == 4
    assert face_orbits(L, G, 0).count == 2
    assert not is_vertex_transitive(L)


@pytest.mark.parametrize("name", [n for n in CORPUS_NAMES])
def test_face_orbits_bounded_by_vertex_figure_orbits(name):
    L = corpus_item(name)
    if L.rank < 2 or not is_vertex_transitive(L):
        return
    G = automorphisms(L)
    v = L.vertices()[0]
    S, H = stabilizer_on_vertex_figure(L, v, G)
    for j in range(1, L.rank):
        assert face_orbits(L, G, j).count <= face_orbits(S, H, j - 1).count


@pytest.mark.parametrize("name", [n for n in CORPUS_NAMES])
def test_flag_orbits_equal_vertex_figure_orbits(name):
    L = corpus_item(name)
    if L.rank < 2 or not is_vertex_transitive(L):
        return
    G = automorphisms(L)
    S, H = stabilizer_on_vertex_figure(L, L.vertices()[0], G)
    assert flag_orbits(L, G).count == flag_orbits(S, H).count


def test_regularity_flags():
    assert is_regular(C.hypercube(3))
    assert is_semi_regular(C.hypercube(3))
    assert not is_regular(C.pyramid(4))
    assert not is_semi_regular(C.pyramid(4))


# kernels ----------------------------------------------------------------------


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def _run_all(mod, fg, n_faces):
    flags = np.ascontiguousarray(fg.flags, dtype=np.int32)
    adj = np.ascontiguousarray(fg.adj, dtype=np.int32)
    out = []
    for t in range(len(fg)):
        fi = np.empty(len(fg), dtype=np.int32)
        face = np.empty(n_faces, dtype=np.int32)
        q = np.empty(len(fg), dtype=np.int32)
        ok = mod.extend_flag_map(flags, adj, 0, t, fi, face, q)
        out.append((bool(ok), face.copy() if ok else None))
    return out


@pytest.mark.skipif(_kernels is None, reason="compiled kernels not built")
@pytest.mark.parametrize("name", ["cube", "square pyramid", "{3,6}_(2,0)", "stacked 6"])
def test_compiled_and_fallback_propagation_agree(name):
    L = corpus_item(name)
    fg = flag_graph(L)
    a = _run_all(_kernels, fg, L.n_faces)
    b = _run_all(_fallback, fg, L.n_faces)
    assert [x for x, _ in a] == [x for x, _ in b]
    for (ok, fa), (_, fb) in zip(a, b):
        if ok:
            assert (fa == fb).all()


perm_lists = st.integers(2, 40).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=4)
)


@given(perm_lists)
@settings(max_examples=60, deadline=None)
def test_union_find_partition_matches_cycle_closure(perms):
    n = len(perms[0])
    for mod in [_fallback] + ([_kernels] if _kernels is not None else []):
        parent = np.arange(n, dtype=np.int32)
        for p in perms:
            mod.union_perm(parent, np.array(p, dtype=np.int32))
        mod.resolve(parent)
        # oracle: connected components of the graph x -- p(x)
        comp = list(range(n))
        changed = True
        while changed:
            changed = False
            for p in perms:
                for x in range(n):
                    m = min(comp[x], comp[p[x]])
                    if comp[x] != m or comp[p[x]] != m:
                        comp[x] = comp[p[x]] = m
                        changed = True
        assert parent.tolist() == comp


def test_forced_fallback_end_to_end():
    import os
    import subprocess
    import sys

    code = (
        "from polyforge import kernels, constructions as C;"
        "from polyforge.symmetry import automorphisms, flag_orbits;"
        "L = C.power_2k(C.polygon(4)).lattice;"
        "print(kernels.BACKEND, automorphisms(L).order, flag_orbits(L).count)"
    )
    env = dict(os.environ, POLYFORGE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "128", "1"]
