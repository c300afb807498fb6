import pytest
from hypothesis import settings

from pgl3zeta.complex import Chamber, Edge, TriangleComplex, Vertex
from pgl3zeta.ingest import build_quotient, search_presentation

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture(scope="session")
def pres2():
    return search_presentation(2, seed=0)


@pytest.fixture(scope="session")
def pres3():
    return search_presentation(3, seed=0)


@pytest.fixture(scope="session")
def q2(pres2):
    return build_quotient(pres2)


@pytest.fixture(scope="session")
def q3(pres3):
    return build_quotient(pres3)


@pytest.fixture(scope="session", params=[2, 3])
def quotient(request, q2, q3):
    return {2: q2, 3: q3}[request.param]


@pytest.fixture
def empty_complex():
    return TriangleComplex(2, [Vertex("a", 0)], [], [])


@pytest.fixture
def one_chamber():
    """A single triangle; not a valid quotient, handy for structure tests."""
    vs = [Vertex("a", 0), Vertex("b", 1), Vertex("c", 2)]
    es = [Edge("ab", "a", "b"), Edge("bc", "b", "c"), Edge("ca", "c", "a")]
    return TriangleComplex(2, vs, es, [Chamber("t", ("ab", "bc", "ca"))])


_ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    store = request.config.stash.setdefault(_ACCEPTANCE_KEY, {})

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        store[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_ACCEPTANCE_KEY, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for number in sorted(store):
            terminalreporter.write_line(store[number])
