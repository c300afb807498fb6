"""Small finite fields GF(q) with table-driven arithmetic.

Elements are the integers ``0 .. q-1``.  For a prime field the integer is the
residue itself; for ``q = p**k`` the base-``p`` digits of the integer are the
coefficients (lowest degree first) of a polynomial reduced modulo a fixed
irreducible polynomial.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import BoundExceeded, NotPrimePower

DEFAULT_MAX_Q = 16

# Monic irreducible polynomials, coefficients lowest degree first.
IRREDUCIBLE = {
    4: (2, (1, 1, 1)),  # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),  # x^3 + x + 1
    9: (3, (1, 0, 1)),  # x^2 + 1
    16: (2, (1, 1, 0, 0, 1)),  # x^4 + x + 1
}


def prime_power(q):
    """Return ``(p, k)`` with ``q == p**k`` or raise :class:`NotPrimePower`."""
    if not isinstance(q, int) or q < 2:
        raise NotPrimePower(f"{q!r} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, k


def _poly_mulmod(a, b, p, modulus):
    deg = len(modulus) - 1
    prod = [0] * (2 * deg - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, deg - 1, -1):
        c = prod[i]
        if c:
            for j in range(deg + 1):
                prod[i - deg + j] = (prod[i - deg + j] - c * modulus[j]) % p
    return prod[:deg]


class GF:
    """The finite field with ``q`` elements.

    Instances are cached per ``q``; use :func:`field` to obtain one.
    """

    def __init__(self, q, max_q=DEFAULT_MAX_Q):
        p, k = prime_power(q)
        if q > max_q:
            raise BoundExceeded(f"q={q} exceeds the configured bound {max_q}")
        if k > 1 and q not in IRREDUCIBLE:
            raise BoundExceeded(f"no irreducible polynomial tabulated for q={q}")
        self.q = q
        self.p = p
        self.k = k
        elems = range(q)
        if k == 1:
            self.add = tuple(tuple((a + b) % p for b in elems) for a in elems)
            self.mul = tuple(tuple((a * b) % p for b in elems) for a in elems)
        else:
            _, modulus = IRREDUCIBLE[q]
            digits = [self._digits(a) for a in elems]
            self.add = tuple(
                tuple(self._undigits([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in elems)
                for a in elems
            )
            self.mul = tuple(
                tuple(self._undigits(_poly_mulmod(digits[a], digits[b], p, modulus)) for b in elems)
                for a in elems
            )
        self.neg = tuple(self.add[a].index(0) for a in elems)
        self.inv = (None,) + tuple(self.mul[a].index(1) for a in range(1, q))

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds):
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def __repr__(self):
        return f"GF({self.q})"

    def __len__(self):
        return self.q

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

    def dot(self, u, v):
        """Bilinear pairing of two coordinate vectors."""
        acc = 0
        for a, b in zip(u, v):
            acc = self.add[acc][self.mul[a][b]]
        return acc

    def scale(self, c, v):
        return tuple(self.mul[c][a] for a in v)


@lru_cache(maxsize=None)
def _cached_field(q):
    return GF(q, max_q=q)


def field(q, max_q=DEFAULT_MAX_Q):
    """Return the (cached) field of order ``q``, enforcing ``q <= max_q``."""
    prime_power(q)
    if q > max_q:
        raise BoundExceeded(f"q={q} exceeds the configured bound {max_q}")
    return _cached_field(q)
