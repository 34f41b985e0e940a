"""Vectorized mod-p kernels used by the samplers and the Monte Carlo harness.

Only prime fields go through these paths; extension fields fall back to the
generic exact routines in matrix.py.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """inv[a] = a^-1 mod p for a in 1..p-1 (inv[0] unused)."""
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    """Rank of an integer matrix with entries in [0, p), by elimination mod p."""
    m = mat.copy()
    rows, cols = m.shape
    inv = inverse_table(p)
    r = 0
    for c in range(cols):
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * inv[m[r, c]]) % p
        below = m[r + 1:, c]
        if below.size and np.any(below):
            m[r + 1:] = (m[r + 1:] - np.outer(below, m[r])) % p
        r += 1
        if r == rows:
            break
    return r


class SpanTracker:
    """Incremental column-span membership over F_p.

    Maintains a fully reduced basis (RREF rows) of the span; reduce() maps a
    vector to its residual against the basis, add() inserts a vector known to
    be outside the span.
    """

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.basis = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []
        self._inv = inverse_table(p)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, x: np.ndarray) -> np.ndarray:
        if not self.pivots:
            return x % self.p
        coeffs = x[self.pivots]
        return (x - coeffs @ self.basis) % self.p

    def contains(self, x: np.ndarray) -> bool:
        return not np.any(self.reduce(x))

    def add(self, x: np.ndarray) -> None:
        red = self.reduce(x)
        nz = np.nonzero(red)[0]
        if nz.size == 0:
            raise ValueError("vector already in span")
        j = int(nz[0])
        red = (red * self._inv[red[j]]) % self.p
        if self.pivots:
            self.basis = (self.basis - np.outer(self.basis[:, j], red)) % self.p
        self.basis = np.vstack([self.basis, red[None, :]])
        self.pivots.append(j)
