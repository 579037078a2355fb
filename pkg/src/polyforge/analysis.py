"""One-shot structural report of a polytope."""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .lattice import FaceLattice, flag_graph
from .properties import f_vector, is_equifacetted, is_lattice, is_vertex_describable, schlafli
from .symmetry import automorphisms, face_orbits, flag_orbits, is_semi_regular


@dataclass
class AnalysisReport:
    f_vector: list[int]
    flag_count: int
    schlafli: list[int] | None
    group_order: int
    flag_orbit_count: int
    face_orbit_counts: dict[str, int]
    regular: bool
    vertex_transitive: bool
    semi_regular: bool
    equifacetted: bool
    vertex_describable: bool
    lattice: bool

    def to_dict(self) -> dict:
        return asdict(self)

    def text(self) -> str:
        width = max(len(k) for k in self.__dataclass_fields__)
        lines = []
        for key, value in self.to_dict().items():
            if isinstance(value, dict):
                value = ", ".join(f"{j}: {c}" for j, c in value.items())
            elif isinstance(value, list):
                value = "(" + ", ".join(map(str, value)) + ")"
            elif value is None:
                value = "absent"
            lines.append(f"{key:<{width}}  {value}")
        return "\n".join(lines)


def analyze(L: FaceLattice) -> AnalysisReport:
    G = automorphisms(L)
    n_flags = len(flag_graph(L))
    orbits = flag_orbits(L, G).count
    # invariant of every report: |G| * flag orbits = flags
    assert G.order * orbits == n_flags
    face_counts = {str(j): face_orbits(L, G, j).count for j in range(0, L.rank)}
    regular = orbits == 1
    vt = face_counts.get("0", 1) == 1
    p = schlafli(L)
    return AnalysisReport(
        f_vector=list(f_vector(L)),
        flag_count=n_flags,
        schlafli=None if p is None else list(p),
        group_order=G.order,
        flag_orbit_count=orbits,
        face_orbit_counts=face_counts,
        regular=regular,
        vertex_transitive=vt,
        semi_regular=regular or (vt and is_semi_regular(L)),
        equifacetted=regular or is_equifacetted(L),
        vertex_describable=is_vertex_describable(L),
        lattice=is_lattice(L),
    )
