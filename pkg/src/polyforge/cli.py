"""Command-line interface.

Exit codes: 0 ok, 1 a verified claim failed (or ``compare`` found no
isomorphism), 2 bad parameters, 3 invalid input document, 4 resource limit.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import constructions as C
from .analysis import analyze
from .errors import BadParameter, NotSimplicial, NotVertexDescribable, PolytopeError, TooLargeForExplicit
from .io import dump_summary, dumps, load_lattice
from .lattice import flag_graph, validate_polytope
from .properties import vertex_set_complex
from .symmetry import automorphisms, isomorphic
from .verify import THEOREMS

EXIT_OK, EXIT_CLAIM, EXIT_PARAM, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2, 3, 4


class CliExit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliExit(EXIT_INVALID, str(exc)) from None


def _load_valid(path: str):
    try:
        L, meta = load_lattice(_read(path))
    except PolytopeError as exc:
        raise CliExit(EXIT_INVALID, f"invalid document {path}: {exc}") from None
    rep = validate_polytope(L)
    if not rep.ok:
        raise CliExit(EXIT_INVALID, f"invalid polytope {path}: {'; '.join(rep.failures[:3])}")
    return L, meta


def _need(value, name, kind):
    if value is None:
        raise CliExit(EXIT_PARAM, f"{kind} requires --{name}")
    return value


def cmd_generate(args) -> str:
    kind = args.kind
    try:
        if kind == "simplex":
            L, meta = C.simplex(_need(args.d, "d", kind)), {"name": f"simplex({args.d})"}
        elif kind == "polygon":
            p = _need(args.p, "p", kind)
            L, meta = C.polygon(p), {"name": f"polygon({p})"}
        elif kind == "hypercube":
            L, meta = C.hypercube(_need(args.d, "d", kind)), {"name": f"hypercube({args.d})"}
        elif kind in ("torus44", "torus36"):
            s = _need(args.s, "s", kind)
            L = C.torus_map(C.TorusMapSpec(kind[-2:], s))
            meta = {"name": f"{{{kind[-2]},{kind[-1]}}}_({s},0)"}
        elif kind == "asymmetric-fixture":
            K = C.find_small_asymmetric_fixture(args.seed, args.max_vertices)
            L = K.lattice
            meta = {
                "name": "asymmetric stacked 2-sphere",
                "provenance": f"find_small_asymmetric_fixture(seed={args.seed}, max_vertices={args.max_vertices})",
                "flag_count": len(flag_graph(L)),
                "group_order": automorphisms(L).order,
            }
        else:  # argparse restricts choices
            raise CliExit(EXIT_PARAM, f"unknown kind {kind}")
    except BadParameter as exc:
        raise CliExit(EXIT_PARAM, str(exc)) from None
    return dumps(L, meta)


def cmd_derive(args) -> str:
    L, meta = _load_valid(args.input)
    name = meta.get("name", "input")
    try:
        if args.op == "order-complex":
            out = C.order_complex(L)
            return dumps(out, {"name": f"order complex of {name}"})
        if args.op == "subdivide":
            facet = args.facet
            if facet != "min":
                try:
                    facet = int(facet)
                except ValueError:
                    raise CliExit(EXIT_PARAM, "--facet must be a face id or 'min'") from None
            out = C.stellar_subdivide_facet(L, facet)
            return dumps(out, {"name": f"stellar subdivision of {name}", "facet": str(args.facet)})
        if args.op == "power2k":
            K = vertex_set_complex(L)
            P = C.power_2k(K, args.mode, threshold=args.threshold)
            if args.mode == "virtual":
                return dump_summary(
                    {
                        "v": P.v,
                        "f_vector": list(P.f_vector()),
                        "flag_count": P.flag_count(),
                        "group_order": P.group_order(),
                        "flag_orbit_count": P.flag_orbit_count(),
                        "face_orbit_counts": {str(j): c for j, c in P.face_orbit_counts().items()},
                        "metadata": {"name": f"2^K for K = {name}"},
                    }
                )
            return dumps(P.lattice, {"name": f"2^K for K = {name}"})
    except TooLargeForExplicit as exc:
        raise CliExit(EXIT_LIMIT, str(exc)) from None
    except (NotSimplicial, NotVertexDescribable) as exc:
        raise CliExit(EXIT_INVALID, str(exc)) from None
    except BadParameter as exc:
        raise CliExit(EXIT_PARAM, str(exc)) from None
    raise CliExit(EXIT_PARAM, f"unknown op {args.op}")


def cmd_analyze(args) -> str:
    L, _ = _load_valid(args.document)
    report = analyze(L)
    if args.json:
        return json.dumps(report.to_dict(), indent=1) + "\n"
    return report.text() + "\n"


def cmd_compare(args):
    A, _ = _load_valid(args.doc_a)
    B, _ = _load_valid(args.doc_b)
    ok, perm = isomorphic(A, B, witness=True)
    out = "yes\n" if ok else "no\n"
    if ok and args.witness:
        out += json.dumps({"face_map": [int(x) for x in perm]}) + "\n"
    return out, (EXIT_OK if ok else EXIT_CLAIM)


def cmd_verify(args):
    claims = THEOREMS[args.theorem]()
    lines = [c.line() for c in claims]
    passed = all(c.passed for c in claims)
    lines.append(f"{args.theorem}: {'all claims pass' if passed else 'FAILED'}")
    return "\n".join(lines) + "\n", (EXIT_OK if passed else EXIT_CLAIM)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit a seed polytope as a poly/1 document")
    g.add_argument("kind", choices=["simplex", "polygon", "hypercube", "torus44", "torus36", "asymmetric-fixture"])
    g.add_argument("--d", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--s", type=int)
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--max-vertices", type=int, default=10)

    d = sub.add_parser("derive", help="order complex, stellar subdivision or 2^K of a document")
    d.add_argument("op", choices=["order-complex", "subdivide", "power2k"])
    d.add_argument("input", nargs="?", default="-")
    d.add_argument("--facet", default="min")
    d.add_argument("--mode", choices=["explicit", "virtual"], default="explicit")
    d.add_argument("--threshold", type=int, default=None)

    a = sub.add_parser("analyze", help="structural report of a document")
    a.add_argument("document", nargs="?", default="-")
    a.add_argument("--json", action="store_true")

    c = sub.add_parser("compare", help="isomorphism test; exit 0 if isomorphic, 1 if not")
    c.add_argument("doc_a")
    c.add_argument("doc_b")
    c.add_argument("--witness", action="store_true")

    v = sub.add_parser("verify", help="check a theorem on its fixtures")
    v.add_argument("theorem", choices=sorted(THEOREMS))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            out, code = cmd_generate(args), EXIT_OK
        elif args.command == "derive":
            out, code = cmd_derive(args), EXIT_OK
        elif args.command == "analyze":
            out, code = cmd_analyze(args), EXIT_OK
        elif args.command == "compare":
            out, code = cmd_compare(args)
        else:
            out, code = cmd_verify(args)
    except CliExit as exc:
        print(f"polyforge: {exc}", file=sys.stderr)
        return exc.code
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
