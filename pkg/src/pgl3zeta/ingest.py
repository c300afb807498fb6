"""Triangle presentations, the quotient complexes they generate, and the
JSON file formats for complexes and presentations.

A triangle presentation over PG(2, q) is a bijection ``lam`` from points to
lines together with a set of point triples such that

* ``(x, y, z)`` in the set implies ``(y, z, x)`` in the set, and
* for each pair ``(x, y)`` there is a ``z`` with ``(x, y, z)`` in the set iff
  ``y`` lies on ``lam(x)``, and that ``z`` is unique.

The group it presents acts simply transitively on the vertices of a
building; its type-preserving subgroup has a quotient with one vertex of
each type, which :func:`build_quotient` writes down directly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .complex import Chamber, Edge, TriangleComplex, Vertex, validate
from .errors import BoundExceeded, DanglingReference, InvalidPresentation, ParseError, SearchExhausted, TypeRuleViolation
from .projgeom import build_plane

DEFAULT_NODE_BUDGET = 2_000_000
DEFAULT_SEARCH_MAX_Q = 3


@dataclass(frozen=True)
class TrianglePresentation:
    q: int
    lam: tuple  # lam[point] = line
    triples: frozenset

    def to_json(self):
        return {
            "q": self.q,
            "lambda": [[x, l] for x, l in enumerate(self.lam)],
            "triples": [list(t) for t in sorted(self.triples)],
        }

    @classmethod
    def from_json(cls, obj):
        pairs = sorted((int(x), int(l)) for x, l in obj["lambda"])
        if [x for x, _ in pairs] != list(range(len(pairs))):
            raise ParseError("lambda must list every point index exactly once")
        return cls(
            q=int(obj["q"]),
            lam=tuple(l for _, l in pairs),
            triples=frozenset(tuple(int(i) for i in t) for t in obj["triples"]),
        )


def presentation_problems(p, plane=None):
    """Every way in which ``p`` fails to be a triangle presentation."""
    plane = plane or build_plane(p.q)
    n = plane.size
    problems = []
    if sorted(p.lam) != list(range(n)):
        problems.append("lambda is not a bijection from points to lines")
        return problems
    for t in p.triples:
        if len(t) != 3 or not all(0 <= i < n for i in t):
            problems.append(f"malformed triple {t}")
            return problems
    third = {}
    for x, y, z in p.triples:
        if (y, z, x) not in p.triples:
            problems.append(f"({x},{y},{z}) present but rotation ({y},{z},{x}) missing")
        third.setdefault((x, y), []).append(z)
    for x in range(n):
        for y in range(n):
            zs = third.get((x, y), [])
            incident = plane.incidence[y][p.lam[x]]
            if incident and len(zs) != 1:
                problems.append(f"pair ({x},{y}) with y on lam(x) has {len(zs)} completions")
            if not incident and zs:
                problems.append(f"pair ({x},{y}) has a completion but y is not on lam(x)")
    expected = n * (p.q + 1)
    if len(p.triples) != expected:
        problems.append(f"{len(p.triples)} triples, expected {expected}")
    return problems


def check_presentation(p, plane=None):
    problems = presentation_problems(p, plane)
    if problems:
        raise InvalidPresentation("; ".join(problems[:5]))
    return p


# -- backtracking search ----------------------------------------------------


class _Search:
    """Joint backtracking over ``lam`` and the triples.

    Open items are flags ``(x, y)`` with ``lam(x)`` already chosen and ``y`` on
    it.  Each is closed by a cyclic triple ``(x, y, z)``, which also closes
    ``(y, z)`` and ``(z, x)`` and may force ``lam(y)`` and ``lam(z)``.  The
    open flag with the fewest completions is always expanded first.
    """

    def __init__(self, plane, rng, budget):
        self.plane = plane
        self.n = plane.size
        self.rng = rng
        self.budget = budget
        self.nodes = 0
        self.lam = {}
        self.used = set()
        self.covered = {}

    def lam_of(self, a, extra):
        return self.lam.get(a, extra.get(a))

    def completions(self, x, y):
        inc = self.plane.incidence
        out = []
        ly = self.lam.get(y)
        zs = self.plane.points_on[ly] if ly is not None else range(self.n)
        for z in zs:
            ly_choices = [ly] if ly is not None else [l for l in self.plane.lines_through[z] if l not in self.used]
            for lyc in ly_choices:
                base = {} if ly is not None else {y: lyc}
                lz = self.lam.get(z, base.get(z))
                if lz is None:
                    lz_choices = [l for l in self.plane.lines_through[x] if l not in self.used and l not in base.values()]
                else:
                    lz_choices = [lz] if inc[x][lz] else []
                for lzc in lz_choices:
                    extra = dict(base)
                    if z not in self.lam and z not in extra:
                        extra[z] = lzc
                    if len(set(extra.values())) != len(extra):
                        continue
                    pairs = {(x, y): z, (y, z): x, (z, x): y}
                    if any(pp in self.covered for pp in pairs):
                        continue
                    if not all(inc[b][self.lam_of(a, extra)] for a, b in pairs):
                        continue
                    out.append((pairs, extra))
        return out

    def open_flags(self):
        return [
            (x, y) for x in sorted(self.lam) for y in self.plane.points_on[self.lam[x]] if (x, y) not in self.covered
        ]

    def run(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchExhausted(f"node budget {self.budget} exhausted")
        flags = self.open_flags()
        if not flags:
            free = [x for x in range(self.n) if x not in self.lam]
            if not free:
                return True
            x = free[0]
            lines = [l for l in range(self.n) if l not in self.used]
            self.rng.shuffle(lines)
            for l in lines:
                self.assign({x: l})
                if self.run():
                    return True
                self.unassign({x: l})
            return False
        best = None
        for f in flags:
            opts = self.completions(*f)
            if not opts:
                return False
            if best is None or len(opts) < len(best):
                best = opts
        self.rng.shuffle(best)
        for pairs, extra in best:
            self.assign(extra)
            self.covered.update(pairs)
            if self.run():
                return True
            for pp in pairs:
                del self.covered[pp]
            self.unassign(extra)
        return False

    def assign(self, extra):
        for a, l in extra.items():
            self.lam[a] = l
            self.used.add(l)

    def unassign(self, extra):
        for a, l in extra.items():
            del self.lam[a]
            self.used.discard(l)


def search_presentation(q, seed=0, node_budget=DEFAULT_NODE_BUDGET, max_q=DEFAULT_SEARCH_MAX_Q):
    """Find a triangle presentation over PG(2, q) by backtracking.

    Deterministic for a given ``(q, seed)``.  Raises BoundExceeded for
    ``q > max_q`` and SearchExhausted when ``node_budget`` runs out.
    """
    if q > max_q:
        raise BoundExceeded(f"presentation search limited to q <= {max_q}")
    plane = build_plane(q)
    search = _Search(plane, random.Random(seed), node_budget)
    if not search.run():
        raise SearchExhausted(f"no triangle presentation found for q={q}")
    triples = frozenset((x, y, z) for (x, y), z in search.covered.items())
    p = TrianglePresentation(q=q, lam=tuple(search.lam[x] for x in range(plane.size)), triples=triples)
    return check_presentation(p, plane)


# -- quotient construction --------------------------------------------------


def _edge_id(i, x):
    return f"e{i}_{x}"


def build_quotient(p):
    """The three-vertex type cover of the presented group.

    Vertices ``v0, v1, v2``; an edge ``e{i}_{x}: v_i -> v_{i+1}`` for every
    point ``x``; for every triple ``(x, y, z)`` and ``i`` a chamber with edges
    ``e(x,i), e(y,i+1), e(z,i+2)``, deduplicated up to rotation.
    """
    plane = build_plane(p.q)
    check_presentation(p, plane)
    n = plane.size
    vertices = [Vertex(f"v{i}", i) for i in range(3)]
    edges = [Edge(_edge_id(i, x), f"v{i}", f"v{(i + 1) % 3}") for i in range(3) for x in range(n)]

    def index(i, x):
        return (i % 3) * n + x

    keys = set()
    for x, y, z in p.triples:
        for i in range(3):
            cycle = (index(i, x), index(i + 1, y), index(i + 2, z))
            keys.add(min(cycle[k:] + cycle[:k] for k in range(3)))
    chambers = []
    for k, cycle in enumerate(sorted(keys)):
        by_slot = sorted(cycle, key=lambda e: e // n)
        chambers.append(Chamber(f"c{k}", tuple(edges[e].id for e in by_slot)))
    c = TriangleComplex(p.q, vertices, edges, chambers)
    report = validate(c)
    if not report.ok:
        raise InvalidPresentation(f"generated quotient fails validation: {report.violations[:3]}")
    return c


# -- file formats -------------------------------------------------------------


def complex_to_json(c):
    return {
        "q": c.q,
        "vertices": [{"id": v.id, "type": v.type} for v in c.vertices],
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in c.edges],
        "chambers": [{"id": ch.id, "edges": list(ch.edges)} for ch in c.chambers],
    }


def dumps_complex(c):
    """Canonical text: one vertex, edge or chamber per line."""
    obj = complex_to_json(c)
    lines = ["{", f'  "q": {obj["q"]},']
    for key in ("vertices", "edges", "chambers"):
        items = obj[key]
        lines.append(f'  "{key}": [')
        for i, item in enumerate(items):
            sep = "," if i + 1 < len(items) else ""
            lines.append("    " + json.dumps(item, separators=(", ", ": ")) + sep)
        lines.append("  ]," if key != "chambers" else "  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save(c, path):
    Path(path).write_text(dumps_complex(c))


def _line_of(text, section, item_id):
    """1-based line of the entry with id ``item_id`` inside ``section``."""
    start = text.find(f'"{section}"')
    needle = f'"id": {json.dumps(item_id)}'
    pos = text.find(needle, max(start, 0))
    if pos < 0:
        needle = f'"id":{json.dumps(item_id)}'
        pos = text.find(needle, max(start, 0))
    return text.count("\n", 0, pos) + 1 if pos >= 0 else None


def loads_complex(text):
    """Parse a complex; errors carry the line of the offending entry."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    try:
        q = int(obj["q"])
        vertices = [Vertex(str(v["id"]), int(v["type"])) for v in obj["vertices"]]
        edges = [Edge(str(e["id"]), str(e["tail"]), str(e["head"])) for e in obj["edges"]]
        chambers = [Chamber(str(ch["id"]), tuple(str(x) for x in ch["edges"])) for ch in obj["chambers"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed complex file: {exc!r}") from None

    types = {v.id: v.type for v in vertices}
    for v in vertices:
        if v.type not in (0, 1, 2):
            raise TypeRuleViolation(f"vertex {v.id!r} has type {v.type}", _line_of(text, "vertices", v.id))
    for e in edges:
        for end in (e.tail, e.head):
            if end not in types:
                raise DanglingReference(f"edge {e.id!r} references unknown vertex {end!r}", _line_of(text, "edges", e.id))
        if types[e.head] != (types[e.tail] + 1) % 3:
            raise TypeRuleViolation(
                f"edge {e.id!r} runs from type {types[e.tail]} to type {types[e.head]}", _line_of(text, "edges", e.id)
            )
    edge_ids = {e.id for e in edges}
    for ch in chambers:
        for eid in ch.edges:
            if eid not in edge_ids:
                raise DanglingReference(
                    f"chamber {ch.id!r} references unknown edge {eid!r}", _line_of(text, "chambers", ch.id)
                )
    try:
        return TriangleComplex(q, vertices, edges, chambers)
    except ParseError as exc:
        section = "chambers" if "chamber" in str(exc) else "edges"
        ident = str(exc).split("'")[1] if "'" in str(exc) else None
        raise type(exc)(str(exc), _line_of(text, section, ident) if ident else None) from None


def load(path):
    return loads_complex(Path(path).read_text())


def save_presentation(p, path):
    Path(path).write_text(json.dumps(p.to_json(), indent=1) + "\n")


def load_presentation(path):
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    return TrianglePresentation.from_json(obj)
