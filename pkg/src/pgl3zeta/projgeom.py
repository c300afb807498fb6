"""The projective plane PG(2, q) and the local edge operators on it.

Points are 1-dimensional subspaces of GF(q)^3, lines are 2-dimensional ones.
A point is stored as its canonical spanning vector (last nonzero coordinate
equal to 1); a line as the canonical vector of its normal covector.  Both
lists are sorted lexicographically, which fixes the basis order of every
matrix built here.

The formal spans of points and of lines play the role of the local spaces
``W1`` and ``W2`` around a vertex of the building: an incoming edge is a line,
an outgoing edge a point, and the two edges continue each other along a
geodesic exactly when the point is *not* on the line.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import AxiomViolation
from .fields import DEFAULT_MAX_Q, GF, field


def _canonical(vec, F):
    last = next(a for a in reversed(vec) if a)
    return F.scale(F.inv[last], vec)


@dataclass(frozen=True, eq=False)
class ProjPlane:
    q: int
    field: GF
    points: tuple
    lines: tuple
    incidence: tuple  # incidence[point][line] -> bool

    @property
    def size(self):
        """Number of points, which equals the number of lines: q^2 + q + 1."""
        return len(self.points)

    @cached_property
    def points_on(self):
        return tuple(tuple(p for p in range(self.size) if self.incidence[p][l]) for l in range(self.size))

    @cached_property
    def lines_through(self):
        return tuple(tuple(l for l in range(self.size) if self.incidence[p][l]) for p in range(self.size))

    def incidence_matrix(self):
        """0/1 integer matrix, rows indexed by points, columns by lines."""
        return [[int(b) for b in row] for row in self.incidence]

    def join(self, a, b):
        """Index of the unique line through two distinct points."""
        common = set(self.lines_through[a]) & set(self.lines_through[b])
        (line,) = common
        return line

    def meet(self, l, m):
        """Index of the unique point on two distinct lines."""
        (point,) = set(self.points_on[l]) & set(self.points_on[m])
        return point


def build_plane(q, max_q=DEFAULT_MAX_Q):
    """Construct PG(2, q) for a prime power ``q <= max_q``.

    Raises NotPrimePower or BoundExceeded.  The classical identity
    ``M M^T = q I + J`` on the incidence matrix is checked before returning.
    """
    F = field(q, max_q=max_q)
    vecs = sorted(
        v for v in itertools.product(range(q), repeat=3) if any(v) and _canonical(v, F) == v
    )
    points = tuple(vecs)
    lines = tuple(vecs)
    incidence = tuple(tuple(F.dot(p, l) == 0 for l in lines) for p in points)
    plane = ProjPlane(q=q, field=F, points=points, lines=lines, incidence=incidence)
    _self_test(plane)
    return plane


def _self_test(plane):
    q, n = plane.q, plane.size
    if n != q * q + q + 1:
        raise AxiomViolation(f"PG(2,{q}) has {n} points", ["points"])
    M = np.array(plane.incidence_matrix(), dtype=np.int64)
    expected = q * np.eye(n, dtype=np.int64) + np.ones((n, n), dtype=np.int64)
    if not np.array_equal(M @ M.T, expected):
        raise AxiomViolation(f"incidence matrix of PG(2,{q}) is not a symmetric design", ["design"])


# -- local operators --------------------------------------------------------


@dataclass(frozen=True)
class LocalOperator:
    """Dense exact matrix between the point span W1 and the line span W2.

    ``domain``/``codomain`` are ``"W1"`` or ``"W2"``; rows index the codomain
    basis and columns the domain basis.
    """

    matrix: tuple
    domain: str
    codomain: str

    @property
    def shape(self):
        return (len(self.matrix), len(self.matrix[0]) if self.matrix else 0)

    def __matmul__(self, other):
        if self.domain != other.codomain:
            raise ValueError(f"cannot compose {self.domain} <- {other.codomain}")
        inner = len(other.matrix)
        cols = len(other.matrix[0]) if other.matrix else 0
        prod = tuple(
            tuple(sum(row[k] * other.matrix[k][j] for k in range(inner)) for j in range(cols)) for row in self.matrix
        )
        return LocalOperator(prod, other.domain, self.codomain)

    def is_identity(self):
        n = len(self.matrix)
        return self.domain == self.codomain and all(
            self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        )

    def row_sums(self):
        return [sum(row) for row in self.matrix]

    def col_sums(self):
        return [sum(col) for col in zip(*self.matrix)]


def local_T(plane):
    """W2 -> W1: a line goes to the sum of all points *not* on it."""
    n = plane.size
    mat = tuple(tuple(Fraction(0 if plane.incidence[p][l] else 1) for l in range(n)) for p in range(n))
    return LocalOperator(mat, "W2", "W1")


def _two_valued(plane, on_line, off_line):
    n = plane.size
    mat = tuple(tuple(on_line if plane.incidence[p][l] else off_line for p in range(n)) for l in range(n))
    return LocalOperator(mat, "W1", "W2")


def local_Tprime(plane):
    """W1 -> W2 with the claimed right-inverse coefficients:
    ``-1/(q+1)`` on lines through the point, ``1/(q^2-q-1)`` elsewhere.

    ``local_T(plane) @ local_Tprime(plane)`` is *not* the identity; see
    :func:`right_inverse_check`.
    """
    q = plane.q
    return _two_valued(plane, Fraction(-1, q + 1), Fraction(1, q * q - q - 1))


def local_right_inverse(plane):
    """W1 -> W2 operator of the same two-valued shape that really is a right
    inverse of :func:`local_T`: ``-(q-1)/q^2`` on incident lines, ``1/q^2``
    elsewhere.

    Solving ``T T' = I`` for ``T' = a*[incident] + b*[not incident]`` gives
    ``b*q^2 = 1`` on the diagonal and ``a*q + b*(q^2-q) = 0`` off it.
    """
    q = plane.q
    return _two_valued(plane, Fraction(-(q - 1), q * q), Fraction(1, q * q))


@dataclass(frozen=True)
class RightInverseCheck:
    q: int
    claimed_is_identity: bool
    claimed_diagonal: Fraction
    claimed_off_diagonal: Fraction
    corrected_is_identity: bool

    def to_json(self):
        return {
            "q": self.q,
            "claimed_coefficients": {"incident": f"-1/{self.q + 1}", "non_incident": f"1/{self.q**2 - self.q - 1}"},
            "claimed_is_right_inverse": self.claimed_is_identity,
            "claimed_product_diagonal": str(self.claimed_diagonal),
            "claimed_product_off_diagonal": str(self.claimed_off_diagonal),
            "corrected_coefficients": {"incident": f"-{self.q - 1}/{self.q**2}", "non_incident": f"1/{self.q**2}"},
            "corrected_is_right_inverse": self.corrected_is_identity,
        }


def right_inverse_check(plane):
    """Compose ``local_T`` with both candidate right inverses."""
    T = local_T(plane)
    claimed = T @ local_Tprime(plane)
    corrected = T @ local_right_inverse(plane)
    off = claimed.matrix[0][1] if plane.size > 1 else Fraction(0)
    return RightInverseCheck(
        q=plane.q,
        claimed_is_identity=claimed.is_identity(),
        claimed_diagonal=claimed.matrix[0][0],
        claimed_off_diagonal=off,
        corrected_is_identity=corrected.is_identity(),
    )


# -- the radius-1 star ------------------------------------------------------


@dataclass(frozen=True)
class StarReport:
    q: int
    neighbours: int
    flags: int
    common_neighbours: int
    max_triple_common: int
    triple_bound_holds: bool
    triple_witness: tuple
    max_chamber_triple_common: int

    def to_json(self):
        return {
            "q": self.q,
            "neighbours": self.neighbours,
            "flags": self.flags,
            "common_neighbours_adjacent_pair": self.common_neighbours,
            "max_common_neighbours_any_triple": self.max_triple_common,
            "triple_bound_holds": self.triple_bound_holds,
            "triple_witness": list(self.triple_witness),
            "max_common_neighbours_mutually_adjacent_triple": self.max_chamber_triple_common,
        }


def star_graph(plane):
    """Adjacency sets of the radius-1 star around a vertex.

    Vertex 0 is the centre, ``1..n`` the points, ``n+1..2n`` the lines; a
    point and a line are adjacent when incident, everything is adjacent to
    the centre.
    """
    n = plane.size
    adj = [set() for _ in range(2 * n + 1)]
    for v in range(1, 2 * n + 1):
        adj[0].add(v)
        adj[v].add(0)
    for p in range(n):
        for l in plane.lines_through[p]:
            adj[1 + p].add(1 + n + l)
            adj[1 + n + l].add(1 + p)
    return adj


def count_common_neighbors(plane):
    """Neighbour and common-neighbour counts in the radius-1 star.

    Raises AxiomViolation if the neighbour count, the flag count, or the
    common-neighbour count of an adjacent pair is off.  The bound "three
    distinct vertices share at most one common neighbour" is only reported:
    three collinear points share both the centre and their line, so it fails
    on every plane.
    """
    q = plane.q
    adj = star_graph(plane)
    failures = []

    neighbours = len(adj[0])
    if neighbours != 2 * (q * q + q + 1):
        failures.append(f"neighbours={neighbours}")
    flags = sum(len(ls) for ls in plane.lines_through)
    if flags != (q * q + q + 1) * (q + 1):
        failures.append(f"flags={flags}")
    pair_counts = {len(adj[0] & adj[v]) for v in adj[0]}
    if pair_counts != {q + 1}:
        failures.append(f"common_neighbours={sorted(pair_counts)}")
    if failures:
        raise AxiomViolation(f"PG(2,{q}) star counts failed: {', '.join(failures)}", failures)

    best, witness, best_adjacent = -1, (), 0
    verts = range(len(adj))
    for a, b, c in itertools.combinations(verts, 3):
        common = len(adj[a] & adj[b] & adj[c])
        if common > best:
            best, witness = common, (a, b, c)
        if b in adj[a] and c in adj[a] and c in adj[b]:
            best_adjacent = max(best_adjacent, common)
    return StarReport(
        q=q,
        neighbours=neighbours,
        flags=flags,
        common_neighbours=q + 1,
        max_triple_common=best,
        triple_bound_holds=best <= 1,
        triple_witness=witness,
        max_chamber_triple_common=best_adjacent,
    )
