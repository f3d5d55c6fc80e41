import os
from functools import lru_cache

import pytest

from zigzags.complex import bipyramid, cross_polytope, join, pinched_torus, simplex
from zigzags.coxeter import coxeter_complex, named_matrix
from zigzags.polytope import flag_complex, named_polytope

DEEP = os.environ.get("ZIGZAGS_DEEP", "") not in ("", "0")


def pytest_collection_modifyitems(config, items):
    if DEEP:
        return
    skip = pytest.mark.skip(reason="set ZIGZAGS_DEEP=1 for long-running checks")
    for item in items:
        if "deep" in item.keywords:
            item.add_marker(skip)


def _sigma(name):
    return coxeter_complex(named_matrix(name)).complex


_BUILDERS = {
    **{f"alpha{n}": (lambda n=n: simplex(n)) for n in range(1, 6)},
    **{f"beta{n}": (lambda n=n: cross_polytope(n)) for n in range(2, 6)},
    **{f"bipyramid{m}": (lambda m=m: bipyramid(m)) for m in (4, 5, 6, 7)},
    "pinched_torus": pinched_torus,
    "alpha1*alpha2": lambda: join(simplex(1), simplex(2)),
    "alpha2*alpha3": lambda: join(simplex(2), simplex(3)),
    "beta2*alpha2": lambda: join(cross_polytope(2), simplex(2)),
    **{f"Sigma({g})": (lambda g=g: _sigma(g)) for g in ("A2", "A3", "B3", "H3", "I2(5)", "D4")},
    "flag(cube:3)": lambda: flag_complex(named_polytope("cube:3")),
}


@lru_cache(maxsize=None)
def corpus_complex(name):
    return _BUILDERS[name]()


CORPUS = sorted(_BUILDERS)
# rank >= 2: the rank-one simplex has a single self-reverse zigzag
CORPUS_RANK2 = [c for c in CORPUS if c != "alpha1"]
SMALL = ["alpha2", "alpha3", "alpha4", "beta2", "beta3", "beta4", "bipyramid4", "bipyramid6",
         "alpha1*alpha2", "Sigma(A3)", "Sigma(B3)"]


@pytest.fixture(params=CORPUS)
def any_complex(request):
    return corpus_complex(request.param)


@pytest.fixture(params=CORPUS_RANK2)
def complex2(request):
    return corpus_complex(request.param)


@pytest.fixture(params=SMALL)
def small_complex(request):
    return corpus_complex(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
