"""Fourier-analytic structure toolkit.

The structure measure rho of a vector a against entry distributions
(c^i_k) is (1/q) * sum_{t != 0} prod_{i not in F} |f_i(t*a_i)|, where
f_i is the modulus of the additive-character transform of distribution i.
Small rho means the linear form X.a is close to uniform.

Character sums run in double-precision complex arithmetic with a global
comparison slack of 1e-12; the slack is always added to the passing side
of an inequality.  The anti-concentration PMFs themselves (linear forms,
subspace membership, quadratic forms) are exact rational computations by
dynamic programming or weighted enumeration, independent of the Fourier
code they are used to validate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import CodimensionTooLarge, DimensionMismatch, TooLargeToEnumerate
from .field import Field, field_new
from .matrix import FqMatrix
from .models import EntryDist

SLACK = 1e-12
FRACTION_SLACK = Fraction(1, 10**12)


def f_abs(d: EntryDist, y: int) -> float:
    """|sum_k c_k e_q(k*y)|, the character transform modulus at y."""
    f = field_new(d.q)
    acc = 0j
    for k, c in enumerate(d.probs):
        if c:
            acc += float(c) * f.char_e(f.mul(k, y))
    return abs(acc)


def threshold_set(d: EntryDist, K: float) -> frozenset[int]:
    """T = {y : |f(y)| >= K * q^(-1/2)}."""
    if K <= 0:
        raise ValueError("K must be positive")
    cut = K / d.q ** 0.5
    return frozenset(y for y in range(d.q) if f_abs(d, y) >= cut)


def diff_dist(d: EntryDist) -> EntryDist:
    """Distribution of x - x' for iid x, x' ~ d."""
    f = field_new(d.q)
    probs = [Fraction(0)] * d.q
    for k, ck in enumerate(d.probs):
        if not ck:
            continue
        for k2, ck2 in enumerate(d.probs):
            if ck2:
                probs[f.sub(k, k2)] += ck * ck2
    return EntryDist(tuple(probs))


@dataclass(frozen=True)
class StructureReport:
    rho: float
    per_t_products: tuple[float, ...]  # indexed by t = 1..q-1
    a: tuple[int, ...]
    F: frozenset[int]
    T_sets: tuple[frozenset[int], ...] | None  # per coordinate, when K given
    K: float | None
    q: int

    def meets_unstructured_condition(self, M: int) -> bool:
        """Claim-1 predicate: for every t != 0, at least M indices i not in F
        have t*a_i outside T_i."""
        if self.T_sets is None:
            raise ValueError("report built without K; no threshold sets")
        f = field_new(self.q)
        for t in range(1, self.q):
            good = sum(
                1 for i, ai in enumerate(self.a)
                if i not in self.F and f.mul(t, ai) not in self.T_sets[i]
            )
            if good < M:
                return False
        return True


def rho(a, dists: list[EntryDist], F=(), K: float | None = None) -> StructureReport:
    """Structure measure of a, with the per-t products; threshold sets are
    attached when K is given."""
    a = tuple(a)
    if len(a) != len(dists):
        raise DimensionMismatch("vector length != number of distributions")
    q = dists[0].q
    f = field_new(q)
    Fset = frozenset(F)
    prods = []
    for t in range(1, q):
        p = 1.0
        for i, ai in enumerate(a):
            if i in Fset:
                continue
            p *= f_abs(dists[i], f.mul(t, ai))
            if p == 0.0:
                break
        prods.append(p)
    value = sum(prods) / q
    T_sets = tuple(threshold_set(d, K) for d in dists) if K is not None else None
    return StructureReport(rho=value, per_t_products=tuple(prods), a=a,
                           F=Fset, T_sets=T_sets, K=K, q=q)


# ---------------------------------------------------------------------------
# exact anti-concentration PMFs
# ---------------------------------------------------------------------------

def linear_form_pmf(a, dists: list[EntryDist], fixed: dict[int, int] | None = None
                    ) -> dict[int, Fraction]:
    """Exact distribution of X.a over F_q; coordinates in `fixed` contribute
    their fixed values, the rest are independent draws from dists[i]."""
    a = tuple(a)
    fixed = fixed or {}
    q = dists[0].q
    f = field_new(q)
    dist = {0: Fraction(1)}
    for i, ai in enumerate(a):
        if i in fixed:
            shift = f.mul(ai, fixed[i])
            dist = {f.add(v, shift): p for v, p in dist.items()}
            continue
        if ai == 0:
            continue
        new: dict[int, Fraction] = {}
        for x, cx in enumerate(dists[i].probs):
            if not cx:
                continue
            inc = f.mul(ai, x)
            for v, p in dist.items():
                key = f.add(v, inc)
                new[key] = new.get(key, Fraction(0)) + p * cx
        dist = new
    return {v: dist.get(v, Fraction(0)) for v in range(q)}


def _perp_basis(H_basis: list, f: Field) -> list[tuple[int, ...]]:
    rows = [list(h) for h in H_basis]
    M = FqMatrix.from_rows(f, rows)
    if M.rank() != len(rows):
        raise ValueError("H basis is not linearly independent")
    return M.nullspace()


def subspace_prob(H_basis: list, dists: list[EntryDist],
                  fixed: dict[int, int] | None = None) -> Fraction:
    """Exact P(X in H) via the joint law of (X.w_1, ..., X.w_d) for a basis
    w of the orthogonal complement.  Guarded at codimension d <= 3."""
    fixed = fixed or {}
    n = len(dists)
    q = dists[0].q
    f = field_new(q)
    if not H_basis:
        perp = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    else:
        perp = _perp_basis(H_basis, f)
    d = len(perp)
    if d > 3:
        raise CodimensionTooLarge(f"codimension {d} > 3")
    if d == 0:
        return Fraction(1)
    dist: dict[tuple[int, ...], Fraction] = {(0,) * d: Fraction(1)}
    for i in range(n):
        coeffs = tuple(w[i] for w in perp)
        if all(c == 0 for c in coeffs):
            continue
        if i in fixed:
            inc = tuple(f.mul(c, fixed[i]) for c in coeffs)
            dist = {tuple(f.add(s, e) for s, e in zip(state, inc)): p
                    for state, p in dist.items()}
            continue
        new: dict[tuple[int, ...], Fraction] = {}
        for x, cx in enumerate(dists[i].probs):
            if not cx:
                continue
            inc = tuple(f.mul(c, x) for c in coeffs)
            for state, p in dist.items():
                key = tuple(f.add(s, e) for s, e in zip(state, inc))
                new[key] = new.get(key, Fraction(0)) + p * cx
        dist = new
    return dist.get((0,) * d, Fraction(0))


def check_unconc_implies_uniform(H_basis: list, dists: list[EntryDist],
                                 fixed: dict[int, int] | None = None
                                 ) -> tuple[Fraction, Fraction, bool]:
    """lhs = |P(X in H) - q^-d|; delta = max over nonzero w in the orthogonal
    complement of |P(X.w = 0) - 1/q|; pass iff lhs <= 2*delta + slack."""
    fixed = fixed or {}
    n = len(dists)
    q = dists[0].q
    f = field_new(q)
    perp = _perp_basis(H_basis, f) if H_basis else \
        [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    d = len(perp)
    lhs = abs(subspace_prob(H_basis, dists, fixed) - Fraction(1, q**d))
    delta = Fraction(0)
    for coeffs in product(range(q), repeat=d):
        if all(c == 0 for c in coeffs):
            continue
        w = [0] * n
        for c, basis_vec in zip(coeffs, perp):
            for j in range(n):
                w[j] = f.add(w[j], f.mul(c, basis_vec[j]))
        pmf = linear_form_pmf(w, dists, fixed)
        delta = max(delta, abs(pmf[0] - Fraction(1, q)))
    return lhs, delta, lhs <= 2 * delta + FRACTION_SLACK


def quad_form_pmf(B, linear, dists: list[EntryDist],
                  fixed: dict[int, int] | None = None) -> dict[int, Fraction]:
    """Exact distribution of sum_{ij} B[i][j] x_i x_j + sum_i linear[i] x_i,
    by weighted enumeration of all free coordinates."""
    fixed = fixed or {}
    m = len(dists)
    q = dists[0].q
    f = field_new(q)
    free = [i for i in range(m) if i not in fixed]
    if len(free) > 8 or q ** len(free) > 10**6:
        raise TooLargeToEnumerate(f"q^{len(free)} assignments exceed the guard")
    B = [list(r) for r in B]
    linear = list(linear)
    supports = {i: [(x, c) for x, c in enumerate(dists[i].probs) if c] for i in free}
    out: dict[int, Fraction] = {v: Fraction(0) for v in range(q)}
    x = [0] * m
    for i, v in fixed.items():
        x[i] = v

    def value() -> int:
        acc = 0
        for i in range(m):
            if x[i] == 0:
                continue
            acc = f.add(acc, f.mul(linear[i], x[i]))
            for j in range(m):
                if x[j] and B[i][j]:
                    acc = f.add(acc, f.mul(B[i][j], f.mul(x[i], x[j])))
        return acc

    def rec(pos: int, weight: Fraction) -> None:
        if pos == len(free):
            out[value()] += weight
            return
        i = free[pos]
        for v, c in supports[i]:
            x[i] = v
            rec(pos + 1, weight * c)
        x[i] = 0

    rec(0, Fraction(1))
    return out


def check_decoupling(A, b, dists: list[EntryDist], I) -> tuple[Fraction, Fraction, bool]:
    """Decoupling inequality: sup_r |P(x.Ax + b.x = r) - 1/q|^4 against
    |P(sum_{i in I, j not in I} A_ij y_i y_j = 0) - 1/q| with y = x - x'."""
    m = len(dists)
    q = dists[0].q
    f = field_new(q)
    Iset = frozenset(I)
    pmf = quad_form_pmf(A, b, dists)
    lhs = max(abs(pmf[r] - Fraction(1, q)) for r in range(q))

    ydists = [diff_dist(d) for d in dists]
    if m > 8 or q**m > 10**6:
        raise TooLargeToEnumerate("difference side exceeds the guard")
    supports = [[(x, c) for x, c in enumerate(d.probs) if c] for d in ydists]
    cross = [(i, j, A[i][j]) for i in range(m) for j in range(m)
             if i in Iset and j not in Iset and A[i][j]]
    p_zero = Fraction(0)

    def rec(pos: int, weight: Fraction, y: list[int]) -> None:
        nonlocal p_zero
        if pos == m:
            acc = 0
            for i, j, aij in cross:
                if y[i] and y[j]:
                    acc = f.add(acc, f.mul(aij, f.mul(y[i], y[j])))
            if acc == 0:
                p_zero += weight
            return
        for v, c in supports[pos]:
            y[pos] = v
            rec(pos + 1, weight * c, y)
        y[pos] = 0

    rec(0, Fraction(1), [0] * m)
    rhs = abs(p_zero - Fraction(1, q))
    return lhs**4, rhs, lhs**4 <= rhs + FRACTION_SLACK
