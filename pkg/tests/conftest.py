import pytest

from polyforge import constructions as C
from polyforge.io import load_fixture


def _corpus():
    return {
        "triangle": lambda: C.polygon(3),
        "square": lambda: C.polygon(4),
        "pentagon": lambda: C.polygon(5),
        "tetrahedron": lambda: C.simplex(3),
        "4-simplex": lambda: C.simplex(4),
        "cube": lambda: C.hypercube(3),
        "4-cube": lambda: C.hypercube(4),
        "octahedron": lambda: C.cross_polytope(3),
        "square pyramid": lambda: C.pyramid(4),
        "{4,4}_(2,0)": lambda: C.torus44(2),
        "{4,4}_(3,0)": lambda: C.torus44(3),
        "{3,6}_(2,0)": lambda: C.torus36(2),
        "{3,6}_(3,0)": lambda: C.torus36(3),
        "stacked 6": lambda: C.stacked_sphere([0, 3]),
        "fixture": lambda: load_fixture()[0],
    }


CORPUS_BUILDERS = _corpus()
CORPUS_NAMES = list(CORPUS_BUILDERS)
_built = {}


def corpus_item(name):
    if name not in _built:
        _built[name] = CORPUS_BUILDERS[name]()
    return _built[name]


@pytest.fixture(params=CORPUS_NAMES)
def corpus_lattice(request):
    return request.param, corpus_item(request.param)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
