import pytest

from pgl3zeta.complex import (
    Chamber,
    Edge,
    TriangleComplex,
    Vertex,
    continuation_counts,
    geodesic_continuation,
    validate,
)
from pgl3zeta.errors import (
    AxiomViolation,
    ChamberInconsistent,
    DanglingReference,
    NotComposable,
    PreconditionFailed,
    TypeRuleViolation,
)


def test_type_rule():
    vs = [Vertex("a", 0), Vertex("b", 2)]
    with pytest.raises(TypeRuleViolation):
        TriangleComplex(2, vs, [Edge("ab", "a", "b")], [])


def test_dangling():
    with pytest.raises(DanglingReference):
        TriangleComplex(2, [Vertex("a", 0)], [Edge("ab", "a", "zz")], [])


def test_chamber_must_close(one_chamber):
    es = list(one_chamber.edges) + [Edge("ab2", "a", "b")]
    with pytest.raises(ChamberInconsistent):
        TriangleComplex(2, one_chamber.vertices, es, [Chamber("t", ("ab2", "ab", "ca"))])


def test_duplicate_id(one_chamber):
    with pytest.raises(ChamberInconsistent):
        TriangleComplex(2, one_chamber.vertices + (Vertex("a", 1),), one_chamber.edges, [])


def test_validation_reports_not_raises(one_chamber):
    r = validate(one_chamber)
    assert not r.ok
    assert not r.degrees_ok and not r.chamber_counts_ok
    assert r.to_json()["ok"] is False


def test_quotients_validate(quotient):
    r = validate(quotient)
    assert r.ok, r.violations
    q = quotient.q
    assert set(r.out_degree.values()) == {q * q + q + 1}
    assert set(r.edge_chambers.values()) == {q + 1}
    assert 3 * len(quotient.chambers) == (q + 1) * len(quotient.edges)


def test_continuation_counts(quotient):
    r = continuation_counts(quotient)
    q = quotient.q
    assert set(r.forward.values()) == {q * q}
    assert set(r.backward.values()) == {q * q}


def test_continuation_precondition(one_chamber):
    with pytest.raises(PreconditionFailed):
        continuation_counts(one_chamber)


def test_continuation_axiom_violation(q2):
    # an extra chamber through an edge removes continuations but keeps degrees
    c = q2
    ch = c.chambers[0]
    extra = TriangleComplex(c.q, c.vertices, c.edges, list(c.chambers) + [Chamber("extra", ch.edges)])
    assert not validate(extra).ok
    with pytest.raises(PreconditionFailed):
        continuation_counts(extra)


def test_geodesic_continuation_definition(q2):
    c = q2
    e = c.edges[0]
    for f in c.edges:
        if f.tail != e.head:
            with pytest.raises(NotComposable):
                geodesic_continuation(c, e.id, f.id)
            continue
        share = any(e.id in ch.edges and f.id in ch.edges for ch in c.chambers)
        assert geodesic_continuation(c, e.id, f.id) == (not share)


def test_without_edge(q2):
    e = q2.edges[0].id
    smaller = q2.without_edge(e)
    assert len(smaller.edges) == len(q2.edges) - 1
    assert len(smaller.chambers) == len(q2.chambers) - (q2.q + 1)
    assert not validate(smaller).ok


def test_axiom_violation_carries_failures():
    exc = AxiomViolation("x", ["a", "b"])
    assert exc.failures == ["a", "b"]


def test_slot_order(quotient):
    types = {v.id: v.type for v in quotient.vertices}
    for ch in quotient.chambers:
        assert [types[quotient.edge(e).tail] for e in ch.edges] == [0, 1, 2]
