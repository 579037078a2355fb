"""Acceptance criteria 1-9, each at its stated tolerance and time limit.

Every test prints one ``PASS``/``FAIL`` line; the lines are collected again in
the terminal summary.  Run standalone with ``python tests/test_acceptance.py``.
"""
import subprocess
import sys
import time
from math import factorial

import pytest

from polyforge import constructions as C
from polyforge.io import dumps, load_lattice
from polyforge.lattice import flag_graph
from polyforge.properties import f_vector, is_vertex_describable, vertex_set_complex
from polyforge.symmetry import (
    automorphisms,
    face_orbits,
    flag_orbits,
    isomorphic,
    is_vertex_transitive,
    stabilizer_on_vertex_figure,
    vertex_stabilizer,
)
from polyforge.verify import pipeline_claims, verify_face_orbits, verify_flag_orbits, verify_power_props

from conftest import CORPUS_NAMES, corpus_item

RESULTS: list[str] = []


def record(number, title, ok, elapsed, limit=None, detail=""):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    line = f"{status}  criterion {number}: {title} [{elapsed:.2f} s{budget}] {detail}".rstrip()
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert within, line


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _claims_detail(claims):
    bad = [c.line() for c in claims if not c.passed]
    return "; ".join(bad) if bad else f"{len(claims)} claims"


def test_criterion_1_cube_identity():
    def run():
        L = C.power_2k(C.simplex(2)).lattice
        G = automorphisms(L)
        return (
            isomorphic(L, C.hypercube(3)),
            f_vector(L),
            len(flag_graph(L)),
            G.order,
            flag_orbits(L, G).count,
        )

    (iso, fv, nflags, order, orbits), dt = timed(run)
    ok = iso and fv == (1, 8, 12, 6, 1) and nflags == 48 and order == 48 and orbits == 1
    record(1, "2^simplex(2) is the 3-cube", ok, dt, 1.0,
           f"iso={iso} f={fv} flags={nflags} |G|={order} orbits={orbits}")


def test_criterion_2_four_cube_identity():
    def run():
        L = C.power_2k(C.polygon(4)).lattice
        return isomorphic(L, C.hypercube(4)), automorphisms(L).order

    (iso, order), dt = timed(run)
    ok = iso and order == 384 == 2**4 * factorial(4)
    record(2, "2^square is the 4-cube with |G| = 384", ok, dt, 5.0, f"iso={iso} |G|={order}")


def test_criterion_3_vertex_describability_boundary():
    def run():
        return {s: is_vertex_describable(C.torus44(s)) for s in (2, 3, 4, 5)}

    got, dt = timed(run)
    ok = got == {2: False, 3: True, 4: True, 5: True}
    record(3, "{4,4}_(s,0) vertex-describable iff s >= 3", ok, dt, 1.0, f"{got}")


def test_criterion_4_power_properties():
    claims, dt = timed(verify_power_props)
    names = {c.name.split(" ")[0] for c in claims}
    ok = all(c.passed for c in claims) and names == {"triangle", "square", "tetrahedron", "fixture"}
    record(4, "2^K properties (a)-(e)", ok, dt, 120.0, _claims_detail(claims))


def test_criterion_5_flag_orbit_theorem():
    claims, dt = timed(verify_flag_orbits)
    ok = all(c.passed for c in claims)
    record(5, "flag orbits of 2^fixture = flags(K), |G| = 2^v", ok, dt, 300.0, _claims_detail(claims))


def test_criterion_6_face_orbit_theorem():
    claims, dt = timed(verify_face_orbits)
    ok = all(c.passed for c in claims)
    record(6, "j-face orbits of 2^fixture = f_(j-1)(K)", ok, dt, None, _claims_detail(claims))


def test_criterion_7_symmetry_breaking_pipeline():
    claims, dt = timed(lambda: pipeline_claims(2) + pipeline_claims(3))
    K = C.symmetry_breaking_pipeline(2)
    ok = all(c.passed for c in claims) and f_vector(K)[1:4] == (25, 75, 50) and len(flag_graph(K)) == 300
    record(7, "pipeline gives an asymmetric simplicial torus", ok, dt, 120.0, _claims_detail(claims))


def _orbit_identities():
    problems = []
    for name in CORPUS_NAMES:
        L = corpus_item(name)
        G = automorphisms(L)
        nflags = len(flag_graph(L))
        if G.order * flag_orbits(L, G).count != nflags:
            problems.append(f"{name}: |G| * orbits != flags")
        for j in range(L.rank):
            for cls in face_orbits(L, G, j).classes:
                if j == 0 and len(cls) * vertex_stabilizer(L, G, cls[0]).order != G.order:
                    problems.append(f"{name}: orbit-stabilizer at vertex {cls[0]}")
        if L.rank >= 2 and is_vertex_transitive(L):
            S, H = stabilizer_on_vertex_figure(L, L.vertices()[0], G)
            for j in range(1, L.rank):
                if face_orbits(L, G, j).count > face_orbits(S, H, j - 1).count:
                    problems.append(f"{name}: face-orbit inequality at j={j}")
    for name in CORPUS_NAMES:
        L = corpus_item(name)
        if not is_vertex_describable(L):
            continue
        K = vertex_set_complex(L)
        if K.v > 8:
            continue
        V = C.power_2k(K, "virtual")
        E = C.power_2k(K, "explicit").lattice
        G = automorphisms(E)
        explicit = (
            f_vector(E),
            len(flag_graph(E)),
            G.order,
            flag_orbits(E, G).count,
            {j: face_orbits(E, G, j).count for j in range(E.rank)},
        )
        virtual = (V.f_vector(), V.flag_count(), V.group_order(), V.flag_orbit_count(), V.face_orbit_counts())
        if explicit != virtual:
            problems.append(f"{name}: virtual {virtual} != explicit {explicit}")
    return problems


def test_criterion_8_orbit_counting_identities():
    problems, dt = timed(_orbit_identities)
    record(8, "orbit identities over the corpus", not problems, dt, None,
           "; ".join(problems) if problems else f"{len(CORPUS_NAMES)} instances")


def _round_trips():
    problems = []
    for name in CORPUS_NAMES:
        L = corpus_item(name)
        text = dumps(L, {"name": name})
        L2, _ = load_lattice(text)
        if not isomorphic(L, L2) or dumps(L2, {"name": name}) != text:
            problems.append(name)
    cmd = [sys.executable, "-m", "polyforge.cli", "generate", "asymmetric-fixture"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    if runs[0] != runs[1]:
        problems.append("repeated generate differs")
    return problems


def test_criterion_9_round_trip_and_determinism():
    problems, dt = timed(_round_trips)
    record(9, "round trip and byte-identical reruns", not problems, dt, None,
           ", ".join(problems) if problems else "all fixtures")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
