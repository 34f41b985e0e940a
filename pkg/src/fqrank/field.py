"""Arithmetic for the finite field F_q with q = p^k.

Elements are integers in [0, q).  The base-p digits of an element are the
coefficients of its polynomial-basis expansion, least significant digit =
constant term.  For prime fields this is ordinary arithmetic mod p; for
extension fields multiplication goes through log/antilog tables built once
at construction over a fixed multiplicative generator.

The reducing modulus is the lexicographically least monic irreducible
polynomial of degree k over F_p (compared as coefficient tuples from the
leading coefficient down, equivalently as base-p integer encodings), so
element representations are deterministic across runs.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from .errors import NotPrimePower, TooLarge

MAX_Q = 1 << 16


def _factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"q={q} is not a prime power")
    p = None
    for d in range(2, math.isqrt(q) + 1):
        if q % d == 0:
            p = d
            break
    if p is None:
        return q, 1  # q itself is prime
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NotPrimePower(f"q={q} is not a prime power")
    return p, k


# ---------------------------------------------------------------------------
# Polynomial helpers over F_p, polynomials encoded as base-p integers.
# ---------------------------------------------------------------------------

def _poly_deg(a: int, p: int) -> int:
    d = -1
    while a:
        a //= p
        d += 1
    return d


def _poly_coeffs(a: int, p: int) -> list[int]:
    out = []
    while a:
        out.append(a % p)
        a //= p
    return out


def _poly_from_coeffs(cs: list[int], p: int) -> int:
    a = 0
    for c in reversed(cs):
        a = a * p + c
    return a


def _poly_mul(a: int, b: int, p: int) -> int:
    ca, cb = _poly_coeffs(a, p), _poly_coeffs(b, p)
    if not ca or not cb:
        return 0
    out = [0] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        if x:
            for j, y in enumerate(cb):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_from_coeffs(out, p)


def _poly_divmod(a: int, b: int, p: int) -> tuple[int, int]:
    db = _poly_deg(b, p)
    cb = _poly_coeffs(b, p)
    lead_inv = pow(cb[-1], p - 2, p) if p > 2 else cb[-1]
    ca = _poly_coeffs(a, p)
    quot = [0] * max(len(ca) - db, 0)
    while len(ca) - 1 >= db and any(ca):
        da = len(ca) - 1
        if ca[-1] == 0:
            ca.pop()
            continue
        coef = (ca[-1] * lead_inv) % p
        quot[da - db] = coef
        for i in range(db + 1):
            ca[da - db + i] = (ca[da - db + i] - coef * cb[i]) % p
        ca.pop()
    return _poly_from_coeffs(quot, p), _poly_from_coeffs(ca, p)


def _poly_mod(a: int, m: int, p: int) -> int:
    return _poly_divmod(a, m, p)[1]


def _is_irreducible(m: int, p: int) -> bool:
    k = _poly_deg(m, p)
    # trial division by all monic polynomials of degree 1..k//2
    for d in range(1, k // 2 + 1):
        for tail in range(p**d):
            g = p**d + tail  # monic of degree d
            if _poly_mod(m, g, p) == 0:
                return False
    return True


def _least_irreducible(p: int, k: int) -> int:
    for m in range(p**k, 2 * p**k):
        if _poly_coeffs(m, p)[-1] != 1:
            continue
        if _is_irreducible(m, p):
            return m
    raise AssertionError("no irreducible polynomial found")  # unreachable


class Field:
    """The finite field F_q, q = p^k <= 2^16."""

    def __init__(self, q: int):
        if q > MAX_Q:
            raise TooLarge(f"q={q} exceeds the cap of 2^16")
        p, k = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.k = k
        if k == 1:
            self.modulus = p  # the polynomial "x - 0" is degenerate; unused
            self._log = None
            self._exp = None
        else:
            self.modulus = _least_irreducible(p, k)
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Polynomial-basis multiplication without tables."""
        return _poly_mod(_poly_mul(a, b, self.p), self.modulus, self.p)

    def _build_tables(self) -> None:
        q = self.q
        # find a multiplicative generator by order testing
        for g in range(2, q):
            x, order = g, 1
            while x != 1:
                x = self._mul_raw(x, g)
                order += 1
            if order == q - 1:
                break
        else:  # pragma: no cover
            raise AssertionError("no generator found")
        self._exp = [0] * (2 * (q - 1))
        self._log = [0] * q
        x = 1
        for i in range(q - 1):
            self._exp[i] = x
            self._exp[i + q - 1] = x
            self._log[x] = i
            x = self._mul_raw(x, g)

    # -- element arithmetic --------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p, out, mult = self.p, 0, 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p, out, mult = self.p, 0, 1
        while a:
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1) - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    # -- trace and additive character ----------------------------------------

    def trace(self, x: int) -> int:
        """tr(x) = x + x^p + ... + x^(p^(k-1)), an element of F_p."""
        if self.k == 1:
            return x
        acc, y = 0, x
        for _ in range(self.k):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        assert acc < self.p  # trace lands in the prime subfield
        return acc

    def char_e(self, t: int) -> complex:
        """The additive character exp(2*pi*i*tr(t)/p)."""
        return cmath.exp(2j * cmath.pi * self.trace(t) / self.p)

    def __repr__(self) -> str:
        return f"Field(q={self.q}, p={self.p}, k={self.k})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("Field", self.q))


@lru_cache(maxsize=None)
def field_new(q: int) -> Field:
    """Construct (and cache) the field with q elements."""
    return Field(q)
