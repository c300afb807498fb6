"""Exact determinants of integer and polynomial matrices.

Polynomial determinants are computed by evaluating at small integers
(0, 1, -1, 2, -2, ...), running fraction-free Bareiss elimination at each
point, and interpolating.  One further point, not used for interpolation,
re-checks the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DegreeBoundViolated, NonSquare
from .poly import IntPolynomial, RationalFunction, divmod_rational, poly_gcd
from .sparse import SparseIntMatrix


def bareiss_det(matrix):
    """Determinant of a square integer matrix (list of rows), fraction-free."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise NonSquare("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def evaluation_points(count):
    """The first ``count`` integers in the order 0, 1, -1, 2, -2, ..."""
    pts = []
    k = 0
    while len(pts) < count:
        if k == 0:
            pts.append(0)
        else:
            pts.append(k)
            if len(pts) < count:
                pts.append(-k)
        k += 1
    return pts


def interpolate(xs, ys):
    """Unique polynomial of degree < len(xs) through the points; coefficients
    must come out integral (they do for determinants of integer matrices)."""
    n = len(xs)
    # Newton divided differences
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form to monomials (Horner from the top)
    poly = [Fraction(0)] * n
    size = 0
    for i in range(n - 1, -1, -1):
        # poly := poly * (u - xs[i]) + coef[i]
        shifted = [Fraction(0)] * (size + 1)
        for d in range(size):
            shifted[d + 1] += poly[d]
            shifted[d] -= xs[i] * poly[d]
        shifted[0] += coef[i]
        poly = shifted
        size += 1
    return IntPolynomial.from_fractions(poly)


def _as_dense(m):
    if isinstance(m, SparseIntMatrix):
        if not m.is_square():
            raise NonSquare(f"expected a square matrix, got {m.rows}x{m.cols}")
        return m.to_dense()
    rows = [list(r) for r in m]
    if any(len(r) != len(rows) for r in rows):
        raise NonSquare("expected a square matrix")
    return rows


def det_one_minus_uM(M):
    """Exact ``det(I - u M)`` as an :class:`IntPolynomial`."""
    dense = _as_dense(M)
    n = len(dense)
    pts = evaluation_points(n + 2)

    def at(t):
        return bareiss_det([[(1 if i == j else 0) - t * v for j, v in enumerate(row)] for i, row in enumerate(dense)])

    values = [at(t) for t in pts]
    poly = interpolate(pts[:-1], values[:-1])
    if poly(pts[-1]) != values[-1]:
        raise DegreeBoundViolated(f"interpolation check failed at u={pts[-1]}")
    return poly


def det_poly_matrix(entries, degree_bound):
    """Exact determinant of a square matrix of :class:`IntPolynomial` entries,
    assuming the result has degree at most ``degree_bound``."""
    rows = [[IntPolynomial._coerce(e) for e in row] for row in entries]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare("determinant of a non-square polynomial matrix")
    pts = evaluation_points(degree_bound + 2)
    values = [bareiss_det([[e(t) for e in row] for row in rows]) for t in pts]
    poly = interpolate(pts[:-1], values[:-1])
    if poly(pts[-1]) != values[-1]:
        raise DegreeBoundViolated(
            f"determinant has degree > {degree_bound} (check failed at u={pts[-1]})"
        )
    return poly


@dataclass(frozen=True)
class PowerQuotient:
    """Certificate ``Z * R == D**m``."""

    m: int
    R: IntPolynomial

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NoSolution:
    """No power of ``D`` is divisible by ``Z``; ``residual`` is the part of
    ``Z`` left over once every factor shared with ``D`` was stripped."""

    residual: IntPolynomial
    passes: int
    reason: str

    def __bool__(self):
        return False


def extract_power_quotient(Z, D, m_max):
    """Minimal ``m <= m_max`` and polynomial ``R`` with ``Z * R == D**m``.

    ``Z`` may be a polynomial or a reduced rational function; for the latter
    the numerator is stripped and the denominator is carried into ``R``.
    Returns :class:`PowerQuotient` or a falsy :class:`NoSolution`.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    D = IntPolynomial(D)
    if D[0] != 1:
        raise ValueError("D must have constant term 1")
    if isinstance(Z, RationalFunction):
        num, den = Z.numerator, Z.denominator
    else:
        num, den = IntPolynomial(Z), IntPolynomial.constant(1)
    if num.is_zero():
        raise ValueError("Z must be nonzero")

    rest = num
    passes = 0
    while rest.degree > 0:
        g = poly_gcd(rest, D)
        if g.degree <= 0:
            return NoSolution(rest.primitive_part(), passes, "a factor of Z is coprime to D")
        passes += 1
        if passes > m_max:
            return NoSolution(rest.primitive_part(), passes - 1, f"more than m_max={m_max} passes needed")
        rest = rest.exact_div(g)
    m = passes
    Dm = D**m
    R = IntPolynomial.from_fractions(_exact_quotient(Dm, num)) * den
    if num * R != Dm * den:
        raise ArithmeticError("power-quotient certificate failed re-multiplication")
    return PowerQuotient(m, R)


def _exact_quotient(a, b):
    q, r = divmod_rational(a.coeffs, b.coeffs)
    if any(r):
        raise ValueError("non-exact division")
    return q
