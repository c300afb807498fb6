"""Finite typed triangle multicomplexes (quotients of the building).

Vertices carry a type in Z/3.  Every stored edge is positively oriented:
``type(head) == type(tail) + 1 (mod 3)``.  A chamber lists its three edges in
the order of their tail types 0, 1, 2, so ``chamber.edges[k]`` is the edge
leaving the type-``k`` vertex.  Parallel edges and repeated chambers are
allowed; everything is addressed by opaque string ids.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from .errors import AxiomViolation, ChamberInconsistent, DanglingReference, NotComposable, PreconditionFailed, TypeRuleViolation


@dataclass(frozen=True)
class Vertex:
    id: str
    type: int


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Chamber:
    id: str
    edges: tuple  # (e01, e12, e20)


class TriangleComplex:
    """Immutable typed triangle complex.

    Structural problems (unknown ids, type-rule violations, chambers whose
    edges do not close up) raise immediately; the counting axioms are left
    to :func:`validate`.
    """

    def __init__(self, q, vertices, edges, chambers):
        self.q = q
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.chambers = tuple(Chamber(c.id, tuple(c.edges)) for c in chambers)
        self.vertex_index = _index(self.vertices, "vertex")
        self.edge_index = _index(self.edges, "edge")
        self.chamber_index = _index(self.chambers, "chamber")
        for v in self.vertices:
            if v.type not in (0, 1, 2):
                raise TypeRuleViolation(f"vertex {v.id!r} has type {v.type!r}, expected 0, 1 or 2")
        for e in self.edges:
            for end in (e.tail, e.head):
                if end not in self.vertex_index:
                    raise DanglingReference(f"edge {e.id!r} references unknown vertex {end!r}")
            t, h = self.vertex(e.tail).type, self.vertex(e.head).type
            if h != (t + 1) % 3:
                raise TypeRuleViolation(f"edge {e.id!r} runs from type {t} to type {h}")
        for c in self.chambers:
            if len(c.edges) != 3:
                raise ChamberInconsistent(f"chamber {c.id!r} must list exactly three edges")
            for eid in c.edges:
                if eid not in self.edge_index:
                    raise DanglingReference(f"chamber {c.id!r} references unknown edge {eid!r}")
            es = [self.edge(eid) for eid in c.edges]
            for k, e in enumerate(es):
                if self.vertex(e.tail).type != k:
                    raise ChamberInconsistent(f"chamber {c.id!r}: edge {e.id!r} in slot {k} has tail type {self.vertex(e.tail).type}")
                if e.head != es[(k + 1) % 3].tail:
                    raise ChamberInconsistent(f"chamber {c.id!r}: edges {e.id!r} and {es[(k + 1) % 3].id!r} do not meet")

    def vertex(self, vid):
        return self.vertices[self.vertex_index[vid]]

    def edge(self, eid):
        return self.edges[self.edge_index[eid]]

    def chamber(self, cid):
        return self.chambers[self.chamber_index[cid]]

    def __eq__(self, other):
        if not isinstance(other, TriangleComplex):
            return NotImplemented
        return (self.q, self.vertices, self.edges, self.chambers) == (other.q, other.vertices, other.edges, other.chambers)

    def __hash__(self):
        return hash((self.q, self.vertices, self.edges, self.chambers))

    def __repr__(self):
        return f"TriangleComplex(q={self.q}, |V|={len(self.vertices)}, |E|={len(self.edges)}, |C|={len(self.chambers)})"

    # -- integer-indexed views used by the operator and enumeration code --

    @cached_property
    def edge_tail(self):
        return tuple(self.vertex_index[e.tail] for e in self.edges)

    @cached_property
    def edge_head(self):
        return tuple(self.vertex_index[e.head] for e in self.edges)

    @cached_property
    def chamber_edges(self):
        """Chamber -> (slot0, slot1, slot2) edge indices."""
        return tuple(tuple(self.edge_index[eid] for eid in c.edges) for c in self.chambers)

    @cached_property
    def out_edges(self):
        out = [[] for _ in self.vertices]
        for i, t in enumerate(self.edge_tail):
            out[t].append(i)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_edges(self):
        out = [[] for _ in self.vertices]
        for i, h in enumerate(self.edge_head):
            out[h].append(i)
        return tuple(tuple(x) for x in out)

    @cached_property
    def chambers_of_edge(self):
        """Edge -> chamber indices containing it (with multiplicity)."""
        out = [[] for _ in self.edges]
        for ci, es in enumerate(self.chamber_edges):
            for e in es:
                out[e].append(ci)
        return tuple(tuple(x) for x in out)

    @cached_property
    def chambers_by_slot(self):
        """``chambers_by_slot[k][e]``: chambers having edge ``e`` in slot ``k``."""
        out = [[[] for _ in self.edges] for _ in range(3)]
        for ci, es in enumerate(self.chamber_edges):
            for k, e in enumerate(es):
                out[k][e].append(ci)
        return tuple(tuple(tuple(x) for x in slot) for slot in out)

    @cached_property
    def continuations(self):
        """Edge index -> indices of its geodesic continuations."""
        cham = [set(x) for x in self.chambers_of_edge]
        return tuple(
            tuple(f for f in self.out_edges[self.edge_head[e]] if not (cham[e] & cham[f]))
            for e in range(len(self.edges))
        )

    @cached_property
    def reverse_continuations(self):
        out = [[] for _ in self.edges]
        for e, fs in enumerate(self.continuations):
            for f in fs:
                out[f].append(e)
        return tuple(tuple(x) for x in out)

    def without_edge(self, eid):
        """Copy with edge ``eid`` and every chamber through it removed."""
        chambers = [c for c in self.chambers if eid not in c.edges]
        edges = [e for e in self.edges if e.id != eid]
        return TriangleComplex(self.q, self.vertices, edges, chambers)


def _index(items, kind):
    idx = {}
    for i, item in enumerate(items):
        if item.id in idx:
            raise ChamberInconsistent(f"duplicate {kind} id {item.id!r}")
        idx[item.id] = i
    return idx


# -- validation -------------------------------------------------------------


@dataclass
class ValidationReport:
    out_degree: dict
    in_degree: dict
    edge_chambers: dict
    degrees_ok: bool
    chamber_counts_ok: bool
    double_count_ok: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "ok": self.ok,
            "degrees_ok": self.degrees_ok,
            "chamber_counts_ok": self.chamber_counts_ok,
            "double_count_ok": self.double_count_ok,
            "out_degree": self.out_degree,
            "in_degree": self.in_degree,
            "edge_chambers": self.edge_chambers,
            "violations": self.violations,
        }


def validate(c):
    """Check the local counting axioms of a building quotient.

    Counting with multiplicity: every vertex has out- and in-degree
    ``q^2+q+1``, every edge lies in ``q+1`` chambers, and
    ``3 |chambers| == (q+1) |edges|``.  Violations are collected, never raised.
    """
    q = c.q
    want_deg = q * q + q + 1
    outd = Counter(e.tail for e in c.edges)
    ind = Counter(e.head for e in c.edges)
    per_edge = Counter(eid for ch in c.chambers for eid in ch.edges)
    violations = []
    for v in c.vertices:
        if outd[v.id] != want_deg:
            violations.append(f"vertex {v.id}: out-degree {outd[v.id]} != {want_deg}")
        if ind[v.id] != want_deg:
            violations.append(f"vertex {v.id}: in-degree {ind[v.id]} != {want_deg}")
    degrees_ok = not violations
    for e in c.edges:
        if per_edge[e.id] != q + 1:
            violations.append(f"edge {e.id}: in {per_edge[e.id]} chambers != {q + 1}")
    chamber_counts_ok = all(per_edge[e.id] == q + 1 for e in c.edges)
    double_count_ok = 3 * len(c.chambers) == (q + 1) * len(c.edges)
    if not double_count_ok:
        violations.append(f"3*|chambers| = {3 * len(c.chambers)} != (q+1)*|edges| = {(q + 1) * len(c.edges)}")
    return ValidationReport(
        out_degree={v.id: outd[v.id] for v in c.vertices},
        in_degree={v.id: ind[v.id] for v in c.vertices},
        edge_chambers={e.id: per_edge[e.id] for e in c.edges},
        degrees_ok=degrees_ok,
        chamber_counts_ok=chamber_counts_ok,
        double_count_ok=double_count_ok,
        violations=violations,
    )


def geodesic_continuation(c, e, f):
    """True iff edge ``f`` continues edge ``e`` along a rank-one geodesic,
    i.e. ``head(e) == tail(f)`` and no chamber contains both edges."""
    ee, ff = c.edge(e), c.edge(f)
    if ee.head != ff.tail:
        raise NotComposable(f"head of {e!r} is {ee.head!r} but tail of {f!r} is {ff.tail!r}")
    ce = set(c.chambers_of_edge[c.edge_index[e]])
    return not (ce & set(c.chambers_of_edge[c.edge_index[f]]))


@dataclass(frozen=True)
class ContinuationReport:
    forward: dict
    backward: dict

    def to_json(self):
        return {"forward": self.forward, "backward": self.backward}


def continuation_counts(c):
    """Every edge must have exactly ``q^2`` forward and ``q^2`` backward
    geodesic continuations.  Requires a complex that passes :func:`validate`."""
    report = validate(c)
    if not report.ok:
        raise PreconditionFailed(f"complex fails validation: {report.violations[:3]}")
    want = c.q * c.q
    fwd = {e.id: len(c.continuations[i]) for i, e in enumerate(c.edges)}
    bwd = {e.id: len(c.reverse_continuations[i]) for i, e in enumerate(c.edges)}
    bad = [eid for eid in fwd if fwd[eid] != want or bwd[eid] != want]
    if bad:
        raise AxiomViolation(f"{len(bad)} edges have the wrong number of continuations", bad)
    return ContinuationReport(fwd, bwd)
