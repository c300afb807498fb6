"""Exact univariate polynomials over the integers, truncated power series,
and reduced rational functions."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

from ..errors import DivisionByZero, NotAUnit


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPolynomial:
    """Polynomial in ``u`` with arbitrary-precision integer coefficients.

    ``coeffs[i]`` is the coefficient of ``u**i``.  The zero polynomial has an
    empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = _strip(coeffs)
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"coefficient {c!r} is not an integer")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, degree, c=1):
        return cls((0,) * degree + (c,))

    @classmethod
    def from_fractions(cls, coeffs):
        """Build from rationals that must all be integral."""
        out = []
        for c in coeffs:
            c = Fraction(c)
            if c.denominator != 1:
                raise ValueError(f"coefficient {c} is not integral")
            out.append(c.numerator)
        return cls(out)

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_unit(self):
        return self.coeffs in ((1,), (-1,))

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "u" if i == 1 else f"u^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = IntPolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q, r = divmod_rational(self.coeffs, other.coeffs)
        return IntPolynomial.from_fractions(q), IntPolynomial.from_fractions(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """Quotient ``self / other``; raises ``ValueError`` unless it divides exactly."""
        q, r = divmod_rational(self.coeffs, other.coeffs)
        if any(r):
            raise ValueError(f"{other} does not divide {self}")
        return IntPolynomial.from_fractions(q)

    def divides(self, other):
        """True when ``self`` divides ``other`` over the rationals."""
        _, r = divmod_rational(other.coeffs, self.coeffs)
        return not any(r)

    # -- derived operations ------------------------------------------------

    def derivative(self):
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self):
        g = 0
        for c in self.coeffs:
            g = igcd(g, c)
        return g

    def primitive_part(self):
        """Divide by the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def substitute_power(self, k):
        """Return ``p(u**k)``."""
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPolynomial(out)

    def truncate(self, n):
        """Drop all terms of degree ``>= n``."""
        return IntPolynomial(self.coeffs[:n])

    def support(self):
        return [i for i, c in enumerate(self.coeffs) if c]

    def to_json(self):
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(c) for c in obj["coeffs"])


def divmod_rational(a, b):
    """Long division of coefficient sequences over the rationals."""
    a = [Fraction(c) for c in _strip(a)]
    b = [Fraction(c) for c in _strip(b)]
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return q, list(_strip(a[: len(b) - 1]))


def pseudo_remainder(a, b):
    """``prem(a, b)``: remainder of ``lc(b)**(deg a - deg b + 1) * a`` by ``b``."""
    if b.is_zero():
        raise DivisionByZero("pseudo-remainder by zero polynomial")
    delta = a.degree - b.degree + 1
    if delta <= 0:
        return a
    lb, db = b.leading, b.degree
    r = list(a.coeffs)
    steps = 0
    while len(r) - 1 >= db:
        top = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for j, y in enumerate(b.coeffs):
            r[shift + j] -= top * y
        r = list(_strip(r))
        steps += 1
    scale = lb ** (delta - steps)
    return IntPolynomial(scale * c for c in r)


def poly_gcd(a, b):
    """Greatest common divisor over Q, normalised to a primitive integer
    polynomial with positive leading coefficient (primitive PRS)."""
    a, b = IntPolynomial(a), IntPolynomial(b)
    if a.is_zero():
        return b.primitive_part()
    if b.is_zero():
        return a.primitive_part()
    a, b = a.primitive_part(), b.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, r.primitive_part()
    return a.primitive_part()


# -- truncated power series ---------------------------------------------------
#
# Series are plain lists of coefficients (ints or Fractions), index = degree.


def series_mul(a, b, order):
    out = [0] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j, y in enumerate(b[: order - i]):
                out[i + j] += x * y
    return out


def series_inverse(p, order):
    """Coefficients of ``1/p`` modulo ``u**order``; requires ``p(0) = ±1``."""
    coeffs = p.coeffs if isinstance(p, IntPolynomial) else tuple(p)
    c0 = coeffs[0] if coeffs else 0
    if c0 not in (1, -1):
        raise NotAUnit(f"constant term {c0} is not a unit")
    out = [0] * order
    for n in range(order):
        acc = 1 if n == 0 else 0
        for k in range(1, min(n, len(coeffs) - 1) + 1):
            acc -= coeffs[k] * out[n - k]
        out[n] = acc * c0
    return out


def series_inverse_rational(p, order):
    """Like :func:`series_inverse` for any nonzero constant term, over Q."""
    coeffs = [Fraction(c) for c in p]
    if not coeffs or coeffs[0] == 0:
        raise NotAUnit("series with zero constant term is not invertible")
    out = [Fraction(0)] * order
    for n in range(order):
        acc = Fraction(1 if n == 0 else 0)
        for k in range(1, min(n, len(coeffs) - 1) + 1):
            acc -= coeffs[k] * out[n - k]
        out[n] = acc / coeffs[0]
    return out


def log_derivative(p, order):
    """Coefficients of ``p'/p`` modulo ``u**order`` (exact rationals)."""
    dp = list(IntPolynomial(p).derivative().coeffs) + [0] * order
    inv = series_inverse_rational(p, order)
    return [Fraction(c) for c in series_mul(dp, inv, order)]


def series_log(p, order):
    """Coefficients of ``log p`` modulo ``u**order`` for ``p(0) = 1``."""
    if IntPolynomial(p)[0] != 1:
        raise NotAUnit("log requires constant term 1")
    ld = log_derivative(p, order)
    out = [Fraction(0)] * order
    for n in range(1, order):
        out[n] = ld[n - 1] / n
    return out


def series_exp(g, order):
    """Coefficients of ``exp g`` modulo ``u**order`` for ``g(0) = 0``."""
    g = [Fraction(c) for c in g] + [Fraction(0)] * order
    if g[0]:
        raise NotAUnit("exp requires zero constant term")
    out = [Fraction(0)] * order
    if order:
        out[0] = Fraction(1)
    # n f_n = sum_k k g_k f_{n-k}
    for n in range(1, order):
        out[n] = sum(k * g[k] * out[n - k] for k in range(1, n + 1)) / n
    return out


# -- rational functions -------------------------------------------------------


class RationalFunction:
    """Reduced quotient ``numerator / denominator`` of integer polynomials.

    Normal form: ``gcd(numerator, denominator) = 1`` over Q, no common integer
    content, and the denominator's leading coefficient is positive.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=None):
        num = IntPolynomial(numerator)
        den = IntPolynomial.constant(1) if denominator is None else IntPolynomial(denominator)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            num, den = IntPolynomial(), IntPolynomial.constant(1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = _cancel(num, den, g)
            c = igcd(num.content(), den.content())
            if den.leading < 0:
                c = -c
            num = IntPolynomial(x // c for x in num.coeffs)
            den = IntPolynomial(x // c for x in den.coeffs)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __eq__(self, other):
        if isinstance(other, (IntPolynomial, int)):
            other = RationalFunction(IntPolynomial._coerce(other))
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __repr__(self):
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"

    def __mul__(self, other):
        if isinstance(other, (IntPolynomial, int)):
            other = RationalFunction(IntPolynomial._coerce(other))
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def is_polynomial(self):
        return self.denominator.degree == 0 and self.denominator.leading == 1

    def series(self, order):
        """Power series coefficients modulo ``u**order`` (exact rationals)."""
        inv = series_inverse_rational(self.denominator, order)
        return [Fraction(c) for c in series_mul(list(self.numerator.coeffs), inv, order)]

    def to_json(self):
        return {"numerator": self.numerator.to_json(), "denominator": self.denominator.to_json()}


def _cancel(num, den, g):
    """Divide both ``num`` and ``den`` by ``g`` over Q, then clear the
    common denominator so both stay integral."""
    qn, rn = divmod_rational(num.coeffs, g.coeffs)
    qd, rd = divmod_rational(den.coeffs, g.coeffs)
    if any(rn) or any(rd):
        raise ValueError("non-exact division in reduction")
    scale = 1
    for c in qn + qd:
        scale = scale * c.denominator // igcd(scale, c.denominator)
    return (IntPolynomial(int(c * scale) for c in qn), IntPolynomial(int(c * scale) for c in qd))
