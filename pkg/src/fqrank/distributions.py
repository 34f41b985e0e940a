"""Corank distributions for uniform matrix ensembles over F_q.

Finite-n laws are closed-form products evaluated in exact rational
arithmetic.  Limiting laws truncate the infinite q-products with an
explicit recorded tail bound; the truncated masses are kept as rationals,
so every comparison made downstream is exact up to the recorded tail.

Two corrections to the printed closed forms are applied (and guarded by
the enumeration oracles in the test suite):
  * the finite-n symmetric product factor is q^(2i)/(q^(2i)-1);
  * the symmetric limit denominator runs over prod_{i=1}^k (q^i - 1).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import EvenCharacteristic
from .field import Field

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class CorankPMF:
    """A PMF over corank values.

    kind is "exact" (masses sum to exactly 1, tail_bound = 0) or
    "truncated-limit" (omitted mass is at most tail_bound).
    """

    support: tuple[tuple[int, Fraction], ...]
    kind: str = "exact"
    tail_bound: Fraction = ZERO

    def __post_init__(self):
        ks = [k for k, _ in self.support]
        if ks != sorted(set(ks)):
            raise ValueError("support coranks must be distinct and sorted")
        if any(m < 0 for _, m in self.support):
            raise ValueError("negative mass")
        total = self.total()
        if total > 1 or total + self.tail_bound < 1 - Fraction(1, 10**12):
            raise ValueError("masses + tail_bound inconsistent with 1")

    def total(self) -> Fraction:
        return sum((m for _, m in self.support), ZERO)

    def mass(self, k: int) -> Fraction:
        for kk, m in self.support:
            if kk == k:
                return m
        return ZERO

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.support)

    def to_json(self, q: int | None = None, params: dict | None = None) -> str:
        obj = {
            "kind": self.kind,
            "q": q,
            "params": params or {},
            "support": [[k, f"{m.numerator}/{m.denominator}"] for k, m in self.support],
            "tail_bound": f"{self.tail_bound.numerator}/{self.tail_bound.denominator}",
        }
        return json.dumps(obj)

    @staticmethod
    def from_counts(counts: dict[int, int], trials: int) -> "CorankPMF":
        support = tuple(sorted((k, Fraction(c, trials)) for k, c in counts.items() if c))
        return CorankPMF(support=support, kind="exact", tail_bound=ZERO)


def _pmf(masses: dict[int, Fraction], kind: str = "exact",
         tail_bound: Fraction = ZERO) -> CorankPMF:
    support = tuple(sorted((k, m) for k, m in masses.items() if m != 0))
    return CorankPMF(support=support, kind=kind, tail_bound=tail_bound)


# ---------------------------------------------------------------------------
# q-product helpers
# ---------------------------------------------------------------------------

def _prod_one_minus_qinv(q: int, lo: int, hi: int) -> Fraction:
    """prod_{i=lo}^{hi} (1 - q^-i)."""
    out = ONE
    for i in range(lo, hi + 1):
        out *= 1 - Fraction(1, q**i)
    return out


@lru_cache(maxsize=None)
def _tail_product(q: int, lo: int, tol_exp: int) -> Fraction:
    """Truncation of prod_{i=lo}^inf (1 - q^-i): factors cut once q^-i < 10^-tol_exp."""
    hi = max(lo, math.ceil(tol_exp / math.log10(q)) + 1)
    return _prod_one_minus_qinv(q, lo, hi)


@lru_cache(maxsize=None)
def _sym_constant(q: int, tol_exp: int) -> Fraction:
    """Truncation of prod_{i=0}^inf (1 - q^-(2i+1))."""
    out = ONE
    i = 0
    while q ** (2 * i + 1) < 10**tol_exp:
        out *= 1 - Fraction(1, q ** (2 * i + 1))
        i += 1
    out *= 1 - Fraction(1, q ** (2 * i + 1))
    return out


def _tol_exp(tol: Fraction) -> int:
    # per-factor cutoff: at least 1e-30, and 20 digits below the support tol
    return max(30, -math.floor(math.log10(float(tol))) + 20)


def _check_tol(tol) -> Fraction:
    tol = Fraction(tol).limit_denominator(10**40) if isinstance(tol, float) else Fraction(tol)
    if not (0 < tol <= Fraction(1, 10**6)):
        raise ValueError("tol must satisfy 0 < tol <= 1e-6")
    return tol


# ---------------------------------------------------------------------------
# finite-n exact laws
# ---------------------------------------------------------------------------

def uniform_square_pmf(n: int, f: Field) -> CorankPMF:
    """Exact corank law of a uniform n x n matrix over F_q."""
    return uniform_rect_pmf(n, 0, f)


def uniform_rect_pmf(n: int, m: int, f: Field) -> CorankPMF:
    """Exact corank law of a uniform n x (n+m) matrix (corank = n - rank)."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1, m >= 0")
    q = f.q
    masses = {}
    for k in range(n + 1):
        num = _prod_one_minus_qinv(q, 1, n + m) * _prod_one_minus_qinv(q, k + 1, n)
        den = _prod_one_minus_qinv(q, 1, n - k) * _prod_one_minus_qinv(q, 1, m + k)
        masses[k] = Fraction(1, q ** (k * (m + k))) * num / den
    return _pmf(masses)


def uniform_sym_pmf(n: int, f: Field) -> CorankPMF:
    """Exact corank law of a uniform symmetric n x n matrix."""
    if n < 1:
        raise ValueError("need n >= 1")
    q = f.q
    masses = {}
    for k in range(n + 1):
        prod = ONE
        for i in range(1, (n - k) // 2 + 1):
            prod *= Fraction(q ** (2 * i), q ** (2 * i) - 1)
        for i in range(n - k):
            prod *= q ** (n - i) - 1
        masses[k] = Fraction(1, q ** (n * (n + 1) // 2)) * prod
    return _pmf(masses)


def uniform_alt_pmf(n: int, f: Field) -> CorankPMF:
    """Exact corank law of a uniform alternating n x n matrix (q odd)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if f.q % 2 == 0:
        raise EvenCharacteristic("alternating model requires odd q")
    q = f.q
    masses = {}
    for k in range(n % 2, n + 1, 2):
        prod = ONE
        for i in range(1, (n - k) // 2 + 1):
            prod *= Fraction(q ** (2 * i - 2), q ** (2 * i) - 1)
        for i in range(n - k):
            prod *= q ** (n - i) - 1
        masses[k] = Fraction(1, q ** (n * (n - 1) // 2)) * prod
    return _pmf(masses)


# ---------------------------------------------------------------------------
# limiting laws
# ---------------------------------------------------------------------------

def limit_square_pmf(f: Field, tol=Fraction(1, 10**12)) -> CorankPMF:
    """Truncated law of the limiting corank Q_inf for square uniform matrices."""
    return limit_rect_pmf(0, f, tol)


def limit_rect_pmf(m: int, f: Field, tol=Fraction(1, 10**12)) -> CorankPMF:
    """Truncated law of Q_{m,inf} for n x (n+m) uniform matrices."""
    tol = _check_tol(tol)
    q, te = f.q, _tol_exp(tol)
    masses: dict[int, Fraction] = {}
    acc = ZERO
    k = 0
    while 1 - acc >= tol:
        mass = (Fraction(1, q ** (k * (m + k)))
                * _tail_product(q, k + 1, te)
                / _prod_one_minus_qinv(q, 1, m + k))
        masses[k] = mass
        acc += mass
        k += 1
    return _pmf(masses, kind="truncated-limit", tail_bound=max(ZERO, 1 - acc))


def limit_sym_pmf(f: Field, tol=Fraction(1, 10**12)) -> CorankPMF:
    """Truncated law of Q_{sym,inf} for symmetric uniform matrices."""
    tol = _check_tol(tol)
    q, te = f.q, _tol_exp(tol)
    const = _sym_constant(q, te)
    masses: dict[int, Fraction] = {}
    acc = ZERO
    k = 0
    while 1 - acc >= tol:
        den = ONE
        for i in range(1, k + 1):
            den *= q**i - 1
        mass = const / den
        masses[k] = mass
        acc += mass
        k += 1
    return _pmf(masses, kind="truncated-limit", tail_bound=max(ZERO, 1 - acc))


def limit_alt_pmf(f: Field, parity: str, tol=Fraction(1, 10**12)) -> CorankPMF:
    """Truncated law of Q_{alt,e} or Q_{alt,o}; each parity class sums to 1."""
    if f.q % 2 == 0:
        raise EvenCharacteristic("alternating model requires odd q")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    tol = _check_tol(tol)
    q, te = f.q, _tol_exp(tol)
    const = _sym_constant(q, te)
    masses: dict[int, Fraction] = {}
    acc = ZERO
    k = 0 if parity == "even" else 1
    while 1 - acc >= tol:
        den = ONE
        for i in range(1, k + 1):
            den *= q**i - 1
        mass = const * Fraction(q**k) / den
        masses[k] = mass
        acc += mass
        k += 2
    return _pmf(masses, kind="truncated-limit", tail_bound=max(ZERO, 1 - acc))


# ---------------------------------------------------------------------------
# total variation
# ---------------------------------------------------------------------------

def tv_distance(a: CorankPMF, b: CorankPMF) -> tuple[Fraction, Fraction]:
    """(value, error bar): half the l1 distance over the union support, plus
    half the summed tail bounds as reported uncertainty."""
    keys = {k for k, _ in a.support} | {k for k, _ in b.support}
    val = sum((abs(a.mass(k) - b.mass(k)) for k in keys), ZERO) / 2
    err = (a.tail_bound + b.tail_bound) / 2
    return val, err
