"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--quick]

For each instance: time to test every colour-compatible candidate flag with
``extend_flag_map`` (the inner loop of ``automorphisms``) and to build the
flag-orbit partition with ``union_perm``/``resolve``.
"""
import argparse
import time

import numpy as np

from polyforge import _fallback
from polyforge import constructions as C
from polyforge.io import load_fixture
from polyforge.lattice import flag_graph
from polyforge.symmetry import automorphisms, flag_colours

try:
    from polyforge import _kernels
except ImportError:
    _kernels = None


def instances(quick):
    out = {
        "cube": lambda: C.hypercube(3),
        "{3,6}_(3,0)": lambda: C.torus36(3),
        "pipeline s=2": lambda: C.symmetry_breaking_pipeline(2),
        "2^tetrahedron": lambda: C.power_2k(C.simplex(3)).lattice,
    }
    if not quick:
        out["2^fixture"] = lambda: C.power_2k(load_fixture()[0]).lattice
    return out


def propagate_all(mod, L):
    fg = flag_graph(L)
    col = flag_colours(L)
    flags = np.ascontiguousarray(fg.flags, dtype=np.int32)
    adj = np.ascontiguousarray(fg.adj, dtype=np.int32)
    flag_img = np.empty(len(fg), dtype=np.int32)
    face_img = np.empty(L.n_faces, dtype=np.int32)
    queue = np.empty(len(fg), dtype=np.int32)
    hits = 0
    for t in np.flatnonzero(col == col[0]):
        hits += bool(mod.extend_flag_map(flags, adj, 0, int(t), flag_img, face_img, queue))
    return hits


def orbit_partition(mod, L):
    fg = flag_graph(L)
    perms = [np.ascontiguousarray(fg.act(p), dtype=np.int32) for p in automorphisms(L).generator_perms]
    parent = np.arange(len(fg), dtype=np.int32)
    for p in perms:
        mod.union_perm(parent, p)
    mod.resolve(parent)
    return len(np.unique(parent))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the largest instance")
    args = ap.parse_args()
    if _kernels is None:
        raise SystemExit("compiled kernels not built; run `pip install -e . --no-build-isolation`")

    print(f"{'instance':<16}{'flags':>8}  {'kernel':<12}{'cython s':>10}{'python s':>10}{'speedup':>9}")
    for name, build in instances(args.quick).items():
        L = build()
        automorphisms(L)  # warm caches so only the kernels are timed
        n = len(flag_graph(L))
        for label, fn in (("propagate", propagate_all), ("orbits", orbit_partition)):
            tc, rc = best_of(lambda: fn(_kernels, L), args.repeat)
            tp, rp = best_of(lambda: fn(_fallback, L), 1 if n > 5000 else args.repeat)
            assert rc == rp, (name, label, rc, rp)
            print(f"{name:<16}{n:>8}  {label:<12}{tc:>10.4f}{tp:>10.4f}{tp / max(tc, 1e-9):>8.0f}x")


if __name__ == "__main__":
    main()
