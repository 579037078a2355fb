"""Theorem checks on concrete instances, as lists of computed-vs-expected claims.

Group orders and orbit counts are always computed by brute force on the
explicit lattice; the 2^K counting formulas are never used as evidence for
the statements they encode.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .constructions import (
    polygon,
    power_2k,
    power_group,
    simplex,
    symmetry_breaking_pipeline,
    vertex_valences,
)
from .io import load_fixture
from .lattice import FaceLattice, facet_as_polytope, flag_graph, vertex_figure
from .properties import euler_characteristic, f_vector, vertex_set_complex
from .symmetry import automorphisms, face_orbits, flag_orbits, isomorphic, is_regular, vertex_stabilizer


@dataclass
class Claim:
    name: str
    expected: Any
    computed: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: computed={self.computed!r} expected={self.expected!r}"


def fixture_K() -> tuple[FaceLattice, dict]:
    return load_fixture()


def power_inputs() -> dict[str, FaceLattice]:
    return {
        "triangle": polygon(3),
        "square": polygon(4),
        "tetrahedron": simplex(3),
        "fixture": fixture_K()[0],
    }


def sample_vertices(L: FaceLattice) -> list[int]:
    vs = list(L.vertices())
    picks = [vs[0], vs[len(vs) // 2], vs[-1], vs[len(vs) // 3]]
    return sorted(set(picks))


def power_props(name: str, KL: FaceLattice) -> list[Claim]:
    K = vertex_set_complex(KL)
    P = power_2k(K, "explicit")
    L = P.lattice
    v = K.v
    claims = []

    claims.append(Claim(f"{name} (a) vertex count 2^v", 2**v, len(L.vertices())))
    ok = all(isomorphic(vertex_figure(L, u), KL) for u in sample_vertices(L))
    claims.append(Claim(f"{name} (a) sampled vertex-figures isomorphic to K", True, ok))

    cubes = {}
    for k in K.lattice.faces_of_rank(K.rank - 1):
        F = facet_as_polytope(K.lattice, k)
        cubes[K.lattice.vertex_sets[k]] = power_2k(vertex_set_complex(F), "explicit").lattice
    bad = 0
    for f in L.faces_of_rank(L.rank - 1):
        if not isomorphic(facet_as_polytope(L, f), cubes[P.faces[f].base]):
            bad += 1
    claims.append(Claim(f"{name} (b) facets not isomorphic to 2^F", 0, bad))

    G = automorphisms(L)
    GK = automorphisms(KL)
    claims.append(Claim(f"{name} (c) |Gamma(2^K)| = 2^v |Gamma(K)|", 2**v * GK.order, G.order))
    H = power_group(P)
    claims.append(Claim(f"{name} (c) bit flips + lifted Gamma(K) generate Gamma(2^K)", True, H.as_set() == G.as_set()))

    claims.append(Claim(f"{name} (d) vertex orbits", 1, face_orbits(L, G, 0).count))
    stab = vertex_stabilizer(L, G, L.vertices()[0])
    claims.append(Claim(f"{name} (d) vertex-stabilizer order = |Gamma(K)|", GK.order, stab.order))
    if is_regular(KL):
        claims.append(Claim(f"{name} (e) K regular implies 2^K regular", True, is_regular(L)))
    return claims


def verify_power_props() -> list[Claim]:
    claims = []
    for name, KL in power_inputs().items():
        claims.extend(power_props(name, KL))
    return claims


def _fixture_certificate() -> tuple[FaceLattice, list[Claim]]:
    KL, cert = fixture_K()
    GK = automorphisms(KL)
    claims = [
        Claim("fixture certificate: |Gamma(K)|", cert["group_order"], GK.order),
        Claim("fixture certificate: flags(K)", cert["flag_count"], len(flag_graph(KL))),
        Claim("fixture certificate: f-vector", cert["f_vector"], list(f_vector(KL))),
    ]
    return KL, claims


def verify_flag_orbits() -> list[Claim]:
    KL, claims = _fixture_certificate()
    K = vertex_set_complex(KL)
    L = power_2k(K, "explicit").lattice
    G = automorphisms(L)
    claims.append(Claim("Gamma(2^K) = C_2^v: group order", 2**K.v, G.order))
    claims.append(Claim("flag orbits of 2^K = flags(K)", len(flag_graph(KL)), flag_orbits(L, G).count))
    return claims


def verify_face_orbits() -> list[Claim]:
    KL, claims = _fixture_certificate()
    K = vertex_set_complex(KL)
    L = power_2k(K, "explicit").lattice
    G = automorphisms(L)
    fK = f_vector(KL)
    claims.append(Claim("0-face orbits of 2^K", 1, face_orbits(L, G, 0).count))
    for j in range(1, L.rank):
        claims.append(Claim(f"{j}-face orbits of 2^K = f_{j - 1}(K)", fK[j], face_orbits(L, G, j).count))
    return claims


def pipeline_claims(s: int) -> list[Claim]:
    K = symmetry_breaking_pipeline(s)
    val = vertex_valences(K)
    claims = [
        Claim(f"s={s} K simplicial", True, all(len(K.downset(f)) == 8 for f in K.faces_of_rank(2))),
        Claim(f"s={s} number of 3-valent vertices", 1, val.count(3)),
        Claim(f"s={s} Euler characteristic", 0, euler_characteristic(K)),
        Claim(f"s={s} |Gamma(K)|", 1, automorphisms(K).order),
    ]
    if s == 2:
        claims.append(Claim("s=2 f-vector", (1, 25, 75, 50, 1), f_vector(K)))
        claims.append(Claim("s=2 flags", 300, len(flag_graph(K))))
    return claims


def verify_pipeline_36() -> list[Claim]:
    return pipeline_claims(2) + pipeline_claims(3)


THEOREMS: dict[str, Callable[[], list[Claim]]] = {
    "power-props": verify_power_props,
    "flag-orbits": verify_flag_orbits,
    "face-orbits": verify_face_orbits,
    "pipeline-36": verify_pipeline_36,
}
