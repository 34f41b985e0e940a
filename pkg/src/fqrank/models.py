"""Seeded samplers for the matrix ensembles.

Every sampler is a pure function of (spec, seed, trial): the per-trial
random stream is keyed by SHA-256(seed, trial) feeding a counter-based
Philox generator, so trials can be generated in any order or in parallel
and still reproduce bit-for-bit.

Entry sampling is exact: an EntryDist holds rational point masses over a
common denominator D, and a single uniform integer in [0, D) selects the
value by cumulative comparison.  No floating-point thresholds anywhere.
"""

from __future__ import annotations

import hashlib
import json
import math
import struct
from bisect import bisect_right
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, reduce

import numpy as np

from ._fast import SpanTracker, rank_mod_p
from .errors import EmptySupport, EvenCharacteristic, InvalidSpec
from .field import Field, field_new
from .matrix import FqMatrix, dumps_matrix, loads_matrix

KINDS = (
    "iid-square", "iid-rect", "symmetric", "alternating",
    "uniform-gl", "gl-minus-identity", "gl-corner",
    "planted-symmetric", "planted-alternating",
)


def derive_rng(seed: int, trial: int = 0) -> np.random.Generator:
    """Counter-based generator keyed by (seed, trial)."""
    h = hashlib.sha256(b"fqrank" + struct.pack("<qq", seed, trial)).digest()
    return np.random.Generator(np.random.Philox(key=int.from_bytes(h[:16], "little")))


# ---------------------------------------------------------------------------
# entry distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EntryDist:
    """A probability vector (c_0, ..., c_{q-1}) over F_q."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.probs):
            raise InvalidSpec("negative entry probability")
        if sum(self.probs) != 1:
            raise InvalidSpec("entry probabilities must sum to 1")

    @property
    def q(self) -> int:
        return len(self.probs)

    @property
    def C(self) -> Fraction:
        """Near-uniform constant q * max_k c_k."""
        return self.q * max(self.probs)

    @cached_property
    def denominator(self) -> int:
        return reduce(math.lcm, (c.denominator for c in self.probs), 1)

    @cached_property
    def _cum(self) -> tuple[int, ...]:
        D = self.denominator
        acc, out = 0, []
        for c in self.probs:
            acc += c.numerator * (D // c.denominator)
            out.append(acc)
        return tuple(out)

    def draw_array(self, rng: np.random.Generator, size) -> np.ndarray:
        u = rng.integers(0, self.denominator, size=size)
        return np.searchsorted(np.asarray(self._cum), u, side="right").astype(np.int64)

    def draw_one(self, rng: np.random.Generator) -> int:
        u = int(rng.integers(0, self.denominator))
        return bisect_right(self._cum, u)


def uniform_entry_dist(f: Field) -> EntryDist:
    return EntryDist(tuple(Fraction(1, f.q) for _ in range(f.q)))


def near_uniform_dist(f: Field, zero_set) -> EntryDist:
    """Uniform on the complement of zero_set; C = q/(q - |zero_set|)."""
    zero_set = frozenset(zero_set)
    if any(not (0 <= v < f.q) for v in zero_set):
        raise InvalidSpec("zero_set element out of range")
    support = f.q - len(zero_set)
    if support == 0:
        raise EmptySupport("zero_set covers all of F_q")
    return EntryDist(tuple(
        Fraction(0) if v in zero_set else Fraction(1, support) for v in range(f.q)
    ))


# ---------------------------------------------------------------------------
# model specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeFSpec:
    """Per-column index sets of fixed entries (rows j in sets[i] of column i),
    with the fixed values (default all zero)."""

    sets: tuple[tuple[int, ...], ...]
    values: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.values is not None and (
            len(self.values) != len(self.sets)
            or any(len(v) != len(s) for v, s in zip(self.values, self.sets))
        ):
            raise InvalidSpec("F_values shape must mirror F")

    def fixed_entries(self) -> dict[tuple[int, int], int]:
        """(row, col) -> fixed value."""
        out: dict[tuple[int, int], int] = {}
        for col, rows in enumerate(self.sets):
            for idx, row in enumerate(rows):
                out[(row, col)] = self.values[col][idx] if self.values else 0
        return out


def band_type_f(n: int, alpha: float) -> TypeFSpec:
    """The band pattern F_i = {i, ..., i + floor(alpha*n)} of fixed zeros."""
    w = int(alpha * n)
    return TypeFSpec(tuple(
        tuple(j for j in range(i, i + w + 1) if j < n) for i in range(n)
    ))


@dataclass(frozen=True)
class ModelSpec:
    kind: str
    field: Field
    n: int
    m: int = 0
    n_prime: int | None = None
    entries: EntryDist | None = None
    overrides: tuple[tuple[int, int, EntryDist], ...] = ()
    type_f: TypeFSpec | None = None
    planted: FqMatrix | None = None

    def __post_init__(self):
        self.validate()

    # -- validation -----------------------------------------------------------

    def validate(self) -> None:
        f = self.field
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown kind {self.kind!r}")
        if self.n < 1:
            raise InvalidSpec("n must be >= 1")
        if self.kind == "iid-rect" and self.m < 0:
            raise InvalidSpec("m must be >= 0")
        if self.kind in ("alternating", "planted-alternating") and f.q % 2 == 0:
            raise InvalidSpec("alternating models require odd q (parity)")
        if self.kind == "gl-corner":
            if self.n_prime is None or not (1 <= self.n_prime <= self.n):
                raise InvalidSpec("gl-corner needs 1 <= n_prime <= n (dimensions)")
        if self.kind.startswith("planted"):
            if self.planted is None:
                raise InvalidSpec("planted kind needs a planted corner matrix")
            if self.planted.rows != self.planted.cols or self.planted.rows > self.n:
                raise InvalidSpec("planted corner must be square with m0 <= n (dimensions)")
            if self.planted.field.q != f.q:
                raise InvalidSpec("planted corner field mismatch")
            if self.kind == "planted-symmetric" and not self.planted.is_symmetric():
                raise InvalidSpec("planted corner must be symmetric")
            if self.kind == "planted-alternating" and not self.planted.is_alternating():
                raise InvalidSpec("planted corner must be alternating")
        for d in self._all_dists():
            if d.q != f.q:
                raise InvalidSpec("entry distribution length != q (distribution sum)")
        if self.type_f is not None:
            rows, cols = self.shape
            if len(self.type_f.sets) > cols:
                raise InvalidSpec("more F sets than columns")
            for col, rset in enumerate(self.type_f.sets):
                for idx, r in enumerate(rset):
                    if not (0 <= r < rows):
                        raise InvalidSpec("F index out of range")
                    v = (self.type_f.values[col][idx] if self.type_f.values else 0)
                    if not (0 <= v < f.q):
                        raise InvalidSpec("fixed value out of range")

    def _all_dists(self):
        out = []
        if self.entries is not None:
            out.append(self.entries)
        out.extend(d for _, _, d in self.overrides)
        return out

    @property
    def shape(self) -> tuple[int, int]:
        if self.kind == "iid-rect":
            return self.n, self.n + self.m
        if self.kind == "gl-corner":
            return self.n_prime, self.n_prime
        return self.n, self.n

    def default_dist(self) -> EntryDist:
        return self.entries if self.entries is not None else uniform_entry_dist(self.field)

    # -- JSON -----------------------------------------------------------------

    def to_json(self) -> str:
        def dist_list(d: EntryDist):
            return [f"{c.numerator}/{c.denominator}" for c in d.probs]

        obj: dict = {"kind": self.kind, "q": self.field.q, "n": self.n}
        if self.kind == "iid-rect":
            obj["m"] = self.m
        if self.n_prime is not None:
            obj["n_prime"] = self.n_prime
        if self.entries is not None or self.overrides:
            obj["entries"] = {
                "default": dist_list(self.default_dist()),
                "overrides": [[i, j, dist_list(d)] for i, j, d in self.overrides],
            }
        if self.type_f is not None:
            obj["F"] = [list(s) for s in self.type_f.sets]
            if self.type_f.values is not None:
                obj["F_values"] = [list(v) for v in self.type_f.values]
        if self.planted is not None:
            obj["planted"] = dumps_matrix(self.planted)
        return json.dumps(obj)

    @staticmethod
    def from_json(text: str | dict) -> "ModelSpec":
        obj = json.loads(text) if isinstance(text, str) else text
        f = field_new(obj["q"])

        def parse_dist(lst) -> EntryDist:
            probs = []
            for x in lst:
                if isinstance(x, str):
                    probs.append(Fraction(x))
                elif isinstance(x, float):
                    probs.append(Fraction(x).limit_denominator(10**12))
                else:
                    probs.append(Fraction(x))
            return EntryDist(tuple(probs))

        entries, overrides = None, ()
        if "entries" in obj:
            e = obj["entries"]
            if "default" in e and e["default"] is not None:
                entries = parse_dist(e["default"])
            overrides = tuple(
                (int(i), int(j), parse_dist(d)) for i, j, d in e.get("overrides", [])
            )
        type_f = None
        if "F" in obj:
            sets = tuple(tuple(int(i) for i in s) for s in obj["F"])
            values = None
            if "F_values" in obj and obj["F_values"] is not None:
                values = tuple(tuple(int(v) for v in vs) for vs in obj["F_values"])
            type_f = TypeFSpec(sets, values)
        planted = loads_matrix(obj["planted"]) if obj.get("planted") else None
        return ModelSpec(
            kind=obj["kind"], field=f, n=int(obj["n"]), m=int(obj.get("m", 0)),
            n_prime=(int(obj["n_prime"]) if obj.get("n_prime") is not None else None),
            entries=entries, overrides=overrides, type_f=type_f, planted=planted,
        )


# ---------------------------------------------------------------------------
# condition validation (reports, never blocks)
# ---------------------------------------------------------------------------

def validate_conditions(spec: ModelSpec, alpha: float) -> dict:
    """Check the index-set conditions the theorems require for the given
    alpha.  Sampling never depends on this; the report is informational."""
    n = spec.n
    sets = spec.type_f.sets if spec.type_f is not None else ()
    size_violations = [i for i, s in enumerate(sets) if len(s) >= alpha * n]
    counts: dict[int, int] = {}
    for s in sets:
        for r in s:
            counts[r] = counts.get(r, 0) + 1
    cap = (1 - 12 * alpha) * n
    membership_violations = [i for i, c in counts.items() if c > cap]
    symmetric = None
    if spec.kind in ("symmetric", "alternating", "planted-symmetric", "planted-alternating"):
        member = {(r, c) for c, s in enumerate(sets) for r in s}
        symmetric = all((c, r) in member for r, c in member)
    report = {
        "alpha": alpha,
        "size_ok": not size_violations,
        "size_violations": size_violations,
        "membership_ok": not membership_violations,
        "membership_violations": sorted(membership_violations),
        "symmetry_ok": symmetric,
        "all_ok": (not size_violations and not membership_violations
                   and symmetric is not False),
    }
    return report


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def sample(spec: ModelSpec, seed: int, trial: int = 0) -> FqMatrix:
    """One exact draw from the model; deterministic given (spec, seed, trial)."""
    rng = derive_rng(seed, trial)
    f = spec.field
    if f.k == 1:
        arr = sample_array(spec, rng)
        return FqMatrix(f, arr.shape[0], arr.shape[1], tuple(int(x) for x in arr.ravel()))
    return _sample_generic(spec, rng)


def sample_gl(n: int, f: Field, seed: int, trial: int = 0) -> FqMatrix:
    """A uniformly distributed element of GL_n(F_q), by per-column rejection."""
    rng = derive_rng(seed, trial)
    if f.k == 1:
        arr = _gl_array(n, f.q, rng)
        return FqMatrix(f, n, n, tuple(int(x) for x in arr.ravel()))
    return _gl_generic(n, f, rng)


def _gl_array(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    tracker = SpanTracker(n, p)
    cols = []
    for _ in range(n):
        while True:
            x = rng.integers(0, p, size=n)
            if not tracker.contains(x):
                break
        tracker.add(x)
        cols.append(x)
    return np.stack(cols, axis=1)


def sample_array(spec: ModelSpec, rng: np.random.Generator) -> np.ndarray:
    """Prime-field fast path; returns the sampled matrix as an int array."""
    f, p = spec.field, spec.field.p
    kind, n = spec.kind, spec.n
    if kind == "uniform-gl":
        return _gl_array(n, p, rng)
    if kind == "gl-minus-identity":
        return (_gl_array(n, p, rng) - np.eye(n, dtype=np.int64)) % p
    if kind == "gl-corner":
        return _gl_array(n, p, rng)[: spec.n_prime, : spec.n_prime]

    rows, cols = spec.shape
    dist = spec.default_dist()
    if kind in ("iid-square", "iid-rect"):
        m = dist.draw_array(rng, (rows, cols))
        for i, j, d in spec.overrides:
            m[i, j] = d.draw_one(rng)
    elif kind in ("symmetric", "planted-symmetric", "alternating", "planted-alternating"):
        alt = "alternating" in kind
        if kind.startswith("planted"):
            dist = uniform_entry_dist(f)
        upper = dist.draw_array(rng, (n, n))
        for i, j, d in spec.overrides:
            i, j = min(i, j), max(i, j)
            upper[i, j] = d.draw_one(rng)
        m = np.zeros((n, n), dtype=np.int64)
        iu = np.triu_indices(n, k=1)
        m[iu] = upper[iu]
        m.T[iu] = (-upper[iu]) % p if alt else upper[iu]
        if not alt:
            diag = np.arange(n)
            m[diag, diag] = upper[diag, diag]
        if kind.startswith("planted"):
            m0 = spec.planted.rows
            pl = np.array(spec.planted.to_lists(), dtype=np.int64)
            m[:m0, :m0] = pl
    else:  # pragma: no cover
        raise InvalidSpec(f"unknown kind {kind!r}")

    if spec.type_f is not None:
        sym = kind in ("symmetric", "planted-symmetric")
        alt = kind in ("alternating", "planted-alternating")
        for (r, c), v in spec.type_f.fixed_entries().items():
            m[r, c] = v
            if sym:
                m[c, r] = v
            elif alt:
                if r == c and v != 0:
                    raise InvalidSpec("alternating diagonal must be fixed to 0")
                m[c, r] = (-v) % p
    return m


def corank_of_sample(spec: ModelSpec, seed: int, trial: int = 0) -> int:
    """Corank (rows - rank) of one draw; fast path for prime fields."""
    f = spec.field
    if f.k == 1:
        arr = sample_array(spec, derive_rng(seed, trial))
        return arr.shape[0] - rank_mod_p(arr, f.p)
    M = _sample_generic(spec, derive_rng(seed, trial))
    return M.rows - M.rank()


# -- generic (extension field) path -------------------------------------------

def _gl_generic(n: int, f: Field, rng: np.random.Generator) -> FqMatrix:
    basis: list[FqMatrix] = []
    cols: list[list[int]] = []
    from .matrix import in_span

    while len(cols) < n:
        x = [int(rng.integers(0, f.q)) for _ in range(n)]
        if cols:
            W = FqMatrix(f, n, len(cols), tuple(v for row in zip(*cols) for v in row))
            if in_span(W, x):
                continue
        elif all(v == 0 for v in x):
            continue
        cols.append(x)
    ent = tuple(cols[j][i] for i in range(n) for j in range(n))
    return FqMatrix(f, n, n, ent)


def _sample_generic(spec: ModelSpec, rng: np.random.Generator) -> FqMatrix:
    f = spec.field
    kind, n = spec.kind, spec.n
    if kind == "uniform-gl":
        return _gl_generic(n, f, rng)
    if kind == "gl-minus-identity":
        A = _gl_generic(n, f, rng)
        ent = tuple(
            f.sub(A.get(i, j), 1 if i == j else 0) for i in range(n) for j in range(n)
        )
        return FqMatrix(f, n, n, ent)
    if kind == "gl-corner":
        return _gl_generic(n, f, rng).submatrix(spec.n_prime, spec.n_prime)

    rows, cols = spec.shape
    dist = spec.default_dist()
    over = {(i, j): d for i, j, d in spec.overrides}
    grid = [[0] * cols for _ in range(rows)]
    if kind in ("iid-square", "iid-rect"):
        for i in range(rows):
            for j in range(cols):
                grid[i][j] = over.get((i, j), dist).draw_one(rng)
    else:
        alt = "alternating" in kind
        if kind.startswith("planted"):
            dist = uniform_entry_dist(f)
        for i in range(n):
            for j in range(i if alt else i, n):
                if alt and j == i:
                    continue
                d = over.get((min(i, j), max(i, j)), dist)
                v = d.draw_one(rng)
                grid[i][j] = v
                if j != i:
                    grid[j][i] = f.neg(v) if alt else v
        if kind.startswith("planted"):
            m0 = spec.planted.rows
            for i in range(m0):
                for j in range(m0):
                    grid[i][j] = spec.planted.get(i, j)
    if spec.type_f is not None:
        sym = kind in ("symmetric", "planted-symmetric")
        alt = kind in ("alternating", "planted-alternating")
        for (r, c), v in spec.type_f.fixed_entries().items():
            grid[r][c] = v
            if sym:
                grid[c][r] = v
            elif alt:
                if r == c and v != 0:
                    raise InvalidSpec("alternating diagonal must be fixed to 0")
                grid[c][r] = f.neg(v)
    return FqMatrix.from_rows(f, grid)
