"""Brute-force loop enumeration on a complex.

Two families of closed objects are enumerated independently of any matrix:

* closed rank-one geodesics: cyclic edge sequences in which every
  consecutive pair, including last -> first, is a geodesic continuation;
* closed rank-one galleries: cyclic flat strips of chambers running between
  two closed geodesics.

Both are counted as directed, positively oriented cycles modulo rotation.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from collections import deque
from dataclasses import dataclass, field

from .errors import BoundExceeded, InvalidLength
from .exactalg import IntPolynomial

log = logging.getLogger(__name__)

DEFAULT_BOUND = 10


def _rotation_period(seq):
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and seq[p:] + seq[:p] == seq:
            return p
    return n


@dataclass(frozen=True)
class GeodesicLoop:
    """A closed geodesic in canonical rotation (lexicographically least)."""

    edges: tuple

    @property
    def length(self):
        return len(self.edges)

    @property
    def primitive_length(self):
        return _rotation_period(self.edges)

    @property
    def is_primitive(self):
        return self.primitive_length == self.length


@dataclass(frozen=True)
class GalleryLoop:
    """A closed flat strip given by its alternating chamber sequence
    ``(U_0, D_0, U_1, D_1, ...)``.

    ``U_k`` holds the lower boundary edge in slot ``(start_slot + k) % 3``;
    ``D_k`` holds the upper boundary edge two slots further on.  Rotation is
    by whole up/down pairs, so the length is the number of pairs, which is
    half the number of chambers.
    """

    chambers: tuple
    start_slot: int = 0

    @property
    def length(self):
        return len(self.chambers) // 2

    @property
    def primitive_length(self):
        pairs = tuple(zip(self.chambers[::2], self.chambers[1::2]))
        # a rotation must also respect slots, so it moves by a multiple of 3
        return math.lcm(_rotation_period(pairs), 3)

    @property
    def is_primitive(self):
        return self.primitive_length == self.length


@dataclass
class TraceTable:
    n_max: int
    geodesic_sum: dict = field(default_factory=dict)  # n -> sum of primitive lengths
    trace_T: dict = field(default_factory=dict)
    gallery_sum: dict = field(default_factory=dict)  # n -> based strip count of length 3n
    trace_L: dict = field(default_factory=dict)

    def rows(self):
        for n in range(1, self.n_max + 1):
            g, t = self.geodesic_sum.get(n), self.trace_T.get(n)
            gs, tl = self.gallery_sum.get(n), self.trace_L.get(n)
            checks = [(a, b) for a, b in ((g, t), (gs, tl)) if a is not None and b is not None]
            match = all(a == b for a, b in checks) if checks else None
            yield n, g, t, gs, tl, match

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "geodesic_sum", "trace_T_n", "gallery_sum", "trace_L_n", "match"])
        for row in self.rows():
            w.writerow(["" if v is None else (str(v).lower() if isinstance(v, bool) else v) for v in row])
        return buf.getvalue()


# -- geodesics ---------------------------------------------------------------


def _exact_reach(target, floor, n, cont):
    """``reach[j]``: edges ``>= floor`` from which ``target`` is exactly ``j``
    continuation steps away, every intermediate edge also ``>= floor``."""
    reach = [frozenset([target])]
    candidates = range(floor, len(cont))
    for _ in range(n):
        prev = reach[-1]
        reach.append(frozenset(e for e in candidates if any(f in prev for f in cont[e])))
    return reach


def iter_geodesic_loops(c, n):
    """Every closed geodesic of length exactly ``n``, once per rotation
    class, in canonical rotation.  Each class is found from its least edge."""
    cont = c.continuations
    for e0 in range(len(c.edges)):
        reach = _exact_reach(e0, e0, n, cont)
        if e0 not in reach[n]:
            continue
        path = [e0]

        def walk(e, left):
            # ``left`` more edges to choose; then the path must close onto e0
            if left == 0:
                yield tuple(path)
                return
            for f in cont[e]:
                if f in reach[left]:
                    path.append(f)
                    yield from walk(f, left - 1)
                    path.pop()

        for loop in walk(e0, n - 1):
            if _is_least_rotation(loop):
                yield GeodesicLoop(loop)


def _is_least_rotation(seq):
    return all(seq <= seq[i:] + seq[:i] for i in range(1, len(seq)) if seq[i] == seq[0])


@dataclass
class GeodesicEnumeration:
    table: TraceTable
    primitive: list  # GeodesicLoop, primitive only, length <= n_max
    loop_counts: dict  # n -> number of rotation classes of length n

    def euler_product(self, order=None):
        """``prod (1 - u^l)`` over primitive loops, truncated at ``u^order``."""
        order = self.table.n_max if order is None else order
        return euler_product([g.length for g in self.primitive], order)


def euler_product(lengths, order):
    """``prod (1 - u^l)`` truncated to degree ``order``."""
    coeffs = [0] * (order + 1)
    coeffs[0] = 1
    for l in sorted(lengths):
        if l > order:
            continue
        for d in range(order, l - 1, -1):
            coeffs[d] -= coeffs[d - l]
    return IntPolynomial(coeffs)


def enumerate_geodesic_loops(c, n_max, bound=DEFAULT_BOUND, trace_T=None):
    """Enumerate closed geodesics of length ``1..n_max``.

    The table entry for ``n`` is the sum of primitive lengths over rotation
    classes of length ``n``, which equals the number of based closed paths.
    ``trace_T`` (optional list of ``tr T^n``) fills the comparison column.
    """
    if n_max > bound:
        raise BoundExceeded(f"n_max={n_max} exceeds the enumeration bound {bound}")
    if n_max < 0:
        raise InvalidLength("n_max must be non-negative")
    table = TraceTable(n_max)
    primitive, counts = [], {}
    for n in range(1, n_max + 1):
        total = classes = 0
        for loop in iter_geodesic_loops(c, n):
            p = loop.primitive_length
            total += p
            classes += 1
            if p == n:
                primitive.append(loop)
        table.geodesic_sum[n] = total
        counts[n] = classes
        log.debug("geodesic loops of length %d: %d classes", n, classes)
    if trace_T is not None:
        table.trace_T = {n: trace_T[n - 1] for n in range(1, n_max + 1)}
    return GeodesicEnumeration(table, primitive, counts)


# -- galleries ---------------------------------------------------------------


class _StripSteps:
    """Precomputed one-step extensions of a flat strip.

    Standing at up chamber ``U`` whose lower edge ``b`` sits in slot ``k``:
    pick a continuation ``b'`` of ``b`` and an up chamber ``U'`` with ``b'``
    in slot ``k+1``; the down chamber ``D`` between them must contain the
    slot-``k`` edge of ``U'`` and the slot-``k+1`` edge of ``U``.  Its slot
    ``k+2`` edge is the next upper boundary edge.
    """

    def __init__(self, c):
        self.c = c
        by_pair = {}
        for ci, es in enumerate(c.chamber_edges):
            for k in range(3):
                by_pair.setdefault((k, es[k], es[(k + 1) % 3]), []).append(ci)
        self.steps = []
        for k in range(3):
            per = []
            for U, es in enumerate(c.chamber_edges):
                out = []
                s = es[(k + 1) % 3]
                for b2 in c.continuations[es[k]]:
                    for U2 in c.chambers_by_slot[(k + 1) % 3][b2]:
                        if U2 == U:
                            continue
                        r = c.chamber_edges[U2][k]
                        for D in by_pair.get((k, r, s), ()):
                            out.append((U2, D, c.chamber_edges[D][(k + 2) % 3]))
                per.append(tuple(out))
            self.steps.append(tuple(per))
        self.cont = [frozenset(x) for x in c.continuations]


def iter_gallery_loops(c, steps, start_slot=0, _steps=None):
    """Closed strips of ``steps`` up/down pairs whose first up chamber has its
    lower edge in ``start_slot``.  Every based loop is produced (no rotation
    quotient); rotating by 3 pairs gives another based loop."""
    st = _steps or _StripSteps(c)
    cont = st.cont
    C = len(c.chambers)
    seq = []

    pred = {}
    for k in range(3):
        for U in range(C):
            for U2, _, _ in st.steps[k][U]:
                pred.setdefault(((k + 1) % 3, U2), set()).add((k, U))

    # (slot, chamber) -> fewest steps needed to get back to U0
    def back_dist(U0):
        dist = {(start_slot % 3, U0): 0}
        dq = deque([(start_slot % 3, U0)])
        while dq:
            node = dq.popleft()
            for p in pred.get(node, ()):
                if p not in dist:
                    dist[p] = dist[node] + 1
                    dq.append(p)
        return dist

    for U0 in range(C):
        dist = back_dist(U0)
        first = None

        def walk(k, U, prevD, prevTau, left):
            if left == 0:
                if U != U0:
                    return
                D0, tau0 = first
                if prevD != D0 and tau0 in cont[prevTau]:
                    yield tuple(seq)
                return
            kk = k % 3
            for U2, D, tau in st.steps[kk][U]:
                if prevD is not None and (D == prevD or tau not in cont[prevTau]):
                    continue
                d = dist.get(((kk + 1) % 3, U2))
                if d is None or d > left - 1:
                    continue
                seq.extend((U, D))
                yield from walk(k + 1, U2, D, tau, left - 1)
                del seq[-2:]

        for U2, D, tau in st.steps[start_slot % 3][U0]:
            d = dist.get(((start_slot + 1) % 3, U2))
            if d is None or d > steps - 1:
                continue
            first = (D, tau)
            seq.extend((U0, D))
            yield from walk(start_slot + 1, U2, D, tau, steps - 1)
            del seq[-2:]


def enumerate_gallery_loops(c, n_max, bound=3, trace_L=None):
    """Based closed strips of ``3n`` pairs starting in slot 0, ``n <= n_max``.

    The count equals the sum over rotation classes of ``l(c_0)/3``.  Runtime
    grows roughly like ``(q^2)^(3n)``; the default bound keeps it at desk scale.
    """
    if n_max > bound:
        raise BoundExceeded(f"n_max={n_max} exceeds the gallery enumeration bound {bound}")
    table = TraceTable(n_max)
    st = _StripSteps(c)
    for n in range(1, n_max + 1):
        table.gallery_sum[n] = sum(1 for _ in iter_gallery_loops(c, 3 * n, 0, st))
        log.debug("gallery loops of length %d: %d based", 3 * n, table.gallery_sum[n])
    if trace_L is not None:
        table.trace_L = {n: trace_L[n - 1] for n in range(1, n_max + 1)}
    return table
