import pytest

from ehrhart_roots import ehrhart_polynomial, standard_family
from ehrhart_roots.lattice import simplex_corpus

CORPUS_SEED = 7
CORPUS_DIMS = (2, 3, 4)
CORPUS_TRIALS = 200
CORPUS_BOUND = 4

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def simplex_results():
    """Ehrhart data for the random-simplex corpus, with wall time per dimension."""
    import time

    out = {}
    timings = {}
    for d in CORPUS_DIMS:
        start = time.perf_counter()
        polys = simplex_corpus(d, CORPUS_TRIALS, CORPUS_BOUND, CORPUS_SEED)
        out[d] = [(P, ehrhart_polynomial(P)) for P in polys]
        timings[d] = time.perf_counter() - start
    return out, timings


@pytest.fixture(scope="session")
def family_results():
    return {
        (name, d): (standard_family(name, d), ehrhart_polynomial(standard_family(name, d)))
        for name in ("simplex", "cube", "cross_polytope")
        for d in range(1, 7)
    }


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
