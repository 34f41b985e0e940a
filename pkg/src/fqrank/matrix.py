"""Dense matrices over F_q with exact rank / RREF / nullspace services.

Matrices are immutable: entries live in a flat row-major tuple of element
representatives.  Elimination uses first-nonzero pivoting; over an exact
field there is nothing to stabilize.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DimensionMismatch
from .field import Field


@dataclass(frozen=True)
class FqMatrix:
    field: Field
    rows: int
    cols: int
    entries: tuple[int, ...] = dc_field(repr=False)

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        if any(not (0 <= e < self.field.q) for e in self.entries):
            raise ValueError("entry out of range for the field")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_rows(cls, f: Field, rows: list[list[int]]) -> "FqMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionMismatch("ragged rows")
        return cls(f, r, c, tuple(x for row in rows for x in row))

    @classmethod
    def identity(cls, f: Field, n: int) -> "FqMatrix":
        return cls(f, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, f: Field, rows: int, cols: int) -> "FqMatrix":
        return cls(f, rows, cols, (0,) * (rows * cols))

    # -- accessors ------------------------------------------------------------

    def get(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "FqMatrix":
        return FqMatrix(
            self.field, self.cols, self.rows,
            tuple(self.get(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def submatrix(self, rows: int, cols: int) -> "FqMatrix":
        """Top-left rows x cols block."""
        ent = tuple(self.get(i, j) for i in range(rows) for j in range(cols))
        return FqMatrix(self.field, rows, cols, ent)

    def is_symmetric(self) -> bool:
        return all(
            self.get(i, j) == self.get(j, i)
            for i in range(self.rows) for j in range(i + 1, self.cols)
        ) and self.rows == self.cols

    def is_alternating(self) -> bool:
        f = self.field
        if self.rows != self.cols:
            return False
        if any(self.get(i, i) != 0 for i in range(self.rows)):
            return False
        return all(
            self.get(j, i) == f.neg(self.get(i, j))
            for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    # -- elimination ----------------------------------------------------------

    def rref(self) -> tuple["FqMatrix", list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        f = self.field
        m = [list(self.row(i)) for i in range(self.rows)]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = f.inv(m[r][c])
            m[r] = [f.mul(inv, x) for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    coef = m[i][c]
                    m[i] = [f.sub(x, f.mul(coef, y)) for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return FqMatrix.from_rows(f, m) if m else self, pivots

    def rank(self) -> int:
        f = self.field
        m = [list(self.row(i)) for i in range(self.rows)]
        r = 0
        for c in range(self.cols):
            piv = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = f.inv(m[r][c])
            for i in range(r + 1, self.rows):
                if m[i][c] != 0:
                    coef = f.mul(m[i][c], inv)
                    m[i] = [f.sub(x, f.mul(coef, y)) for x, y in zip(m[i], m[r])]
            r += 1
            if r == self.rows:
                break
        return r

    def corank(self) -> int:
        """rows - rank; the corank Q(M) for square matrices."""
        return self.rows - self.rank()

    def nullspace(self) -> list[tuple[int, ...]]:
        """Basis of the right kernel {v : Mv = 0}."""
        f = self.field
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [0] * self.cols
            v[fc] = 1
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(red.get(r, fc))
            basis.append(tuple(v))
        return basis

    def left_nullspace(self) -> list[tuple[int, ...]]:
        """Basis of {w : w^T M = 0}; size = rows - rank."""
        return self.transpose().nullspace()

    def matvec(self, v: tuple[int, ...]) -> tuple[int, ...]:
        f = self.field
        if len(v) != self.cols:
            raise DimensionMismatch("vector length != cols")
        out = []
        for i in range(self.rows):
            acc = 0
            for j, x in enumerate(v):
                if x:
                    acc = f.add(acc, f.mul(self.get(i, j), x))
            out.append(acc)
        return tuple(out)


def in_span(W: FqMatrix, x: tuple[int, ...] | list[int]) -> bool:
    """True iff x lies in the column span of W."""
    if len(x) != W.rows:
        raise DimensionMismatch(f"vector length {len(x)} != {W.rows} rows")
    aug = FqMatrix(
        W.field, W.rows, W.cols + 1,
        tuple(v for i in range(W.rows) for v in (*W.row(i), x[i])),
    )
    return aug.rank() == W.rank()


# -- fixture text format ------------------------------------------------------
# First line "q rows cols", then row-major space-separated entries.

def dumps_matrix(M: FqMatrix) -> str:
    lines = [f"{M.field.q} {M.rows} {M.cols}"]
    for i in range(M.rows):
        lines.append(" ".join(str(x) for x in M.row(i)))
    return "\n".join(lines) + "\n"


def loads_matrix(text: str) -> FqMatrix:
    from .field import field_new

    tokens = text.split()
    q, rows, cols = int(tokens[0]), int(tokens[1]), int(tokens[2])
    body = [int(t) for t in tokens[3:]]
    if len(body) != rows * cols:
        raise DimensionMismatch("matrix text has wrong number of entries")
    return FqMatrix(field_new(q), rows, cols, tuple(body))
