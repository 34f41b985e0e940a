"""Exact corank Markov chains for the uniform exposure processes.

Three kinds are supported:

* ``symmetric``:   corner exposure of a uniform symmetric matrix.  At corank
  k the corank drops with probability 1 - q^-k, stays with probability
  q^-k - q^-(k+1) and rises with probability q^-(k+1).
* ``alternating``: corner exposure of a uniform alternating matrix; the
  corank moves by exactly one each step (drop 1 - q^-k, rise q^-k).
* ``iid-column``:  column exposure of an iid uniform matrix with ambient
  dimension n.  The tracked state is the codimension of the column span;
  it shrinks with probability 1 - q^-k and is the matrix corank once n
  columns are exposed.

Everything is exact rational arithmetic.  One step moves the corank by at
most one, so the state space [0, x0 + steps] is complete and there is no
truncation error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .distributions import CorankPMF, _pmf
from .errors import EvenCharacteristic
from .field import Field

CHAIN_KINDS = ("symmetric", "alternating", "iid-column")


@dataclass(frozen=True)
class ChainSpec:
    kind: str
    field: Field
    n: int | None = None  # ambient dimension, iid-column only

    def __post_init__(self):
        if self.kind not in CHAIN_KINDS:
            raise ValueError(f"unknown chain kind {self.kind!r}")
        if self.kind == "alternating" and self.field.q % 2 == 0:
            raise EvenCharacteristic("alternating chain requires odd q")
        if self.kind == "iid-column" and (self.n is None or self.n < 1):
            raise ValueError("iid-column chain needs ambient dimension n >= 1")


def transition(kind: str, k: int, f: Field) -> tuple[Fraction, Fraction, Fraction]:
    """Exact one-step (down, stay, up) probabilities from corank k."""
    if k < 0:
        raise ValueError("corank must be >= 0")
    q = f.q
    qk = Fraction(1, q**k)
    if kind == "symmetric":
        return 1 - qk, qk - qk / q, qk / q
    if kind == "alternating":
        if q % 2 == 0:
            raise EvenCharacteristic("alternating chain requires odd q")
        return 1 - qk, Fraction(0), qk
    if kind == "iid-column":
        # state = codimension of the span; a new column leaves it or not
        return 1 - qk, qk, Fraction(0)
    raise ValueError(f"unknown chain kind {kind!r}")


def _step(kind: str, f: Field, dist: dict[int, Fraction],
          absorb_at_zero: bool = False) -> dict[int, Fraction]:
    new: dict[int, Fraction] = {}
    for k, p in dist.items():
        if not p:
            continue
        if absorb_at_zero and k == 0:
            new[0] = new.get(0, Fraction(0)) + p
            continue
        down, stay, up = transition(kind, k, f)
        if down:
            new[k - 1] = new.get(k - 1, Fraction(0)) + p * down
        if stay:
            new[k] = new.get(k, Fraction(0)) + p * stay
        if up:
            new[k + 1] = new.get(k + 1, Fraction(0)) + p * up
    return new


def evolve(spec: ChainSpec, initial: CorankPMF, steps: int) -> CorankPMF:
    """Exact PMF after `steps` one-step transitions.

    For the iid-column kind the initial PMF is over span dimension (so the
    delta at 0 is the empty matrix) and the returned PMF is over the span
    codimension n - dim, which equals the matrix corank once steps = n.
    """
    if spec.kind == "iid-column":
        dist = {spec.n - dim: p for dim, p in initial.support}
        if any(k < 0 for k in dist):
            raise ValueError("span dimension exceeds ambient n")
    else:
        dist = dict(initial.support)
    for _ in range(steps):
        dist = _step(spec.kind, spec.field, dist)
    return _pmf(dist, kind=initial.kind, tail_bound=initial.tail_bound)


def delta_pmf(k: int) -> CorankPMF:
    return CorankPMF(support=((k, Fraction(1)),))


def hit_zero_prob(spec: ChainSpec, x0: int, steps: int) -> Fraction:
    """Exact probability the chain started at corank x0 touches 0 within
    `steps` steps (absorbing-state computation)."""
    if x0 < 0:
        raise ValueError("x0 must be >= 0")
    dist = {x0: Fraction(1)}
    for _ in range(steps):
        dist = _step(spec.kind, spec.field, dist, absorb_at_zero=True)
    return dist.get(0, Fraction(0))


def path_probability(spec: ChainSpec, path: list[int]) -> Fraction:
    """Exact probability of a given corank path (consecutive transitions)."""
    prob = Fraction(1)
    for k, k2 in zip(path, path[1:]):
        down, stay, up = transition(spec.kind, k, spec.field)
        move = {k - 1: down, k: stay, k + 1: up}.get(k2, Fraction(0))
        prob *= move
        if not prob:
            break
    return prob


def most_likely_positive_path(spec: ChainSpec, x0: int, steps: int
                              ) -> tuple[tuple[int, ...], Fraction]:
    """The maximal-probability strictly-positive corank path: descend to 1,
    then alternate between 1 and 2 (with a single stay at 1 absorbing an odd
    leftover step in the symmetric chain)."""
    if spec.kind not in ("symmetric", "alternating"):
        raise ValueError("positive-path claim applies to symmetric/alternating")
    if x0 < 1:
        raise ValueError("a strictly positive path needs x0 >= 1")
    path = [x0]
    pos = x0
    remaining = steps
    while pos > 1 and remaining > 0:
        pos -= 1
        path.append(pos)
        remaining -= 1
    stays = remaining % 2 if spec.kind == "symmetric" else 0
    for _ in range((remaining - stays) // 2):
        path.extend([2, 1])
    if stays:
        path.append(1)
    if spec.kind == "alternating" and len(path) < steps + 1:
        path.append(2)  # odd leftover has to end on an up-move
    return tuple(path), path_probability(spec, path)


def enumerate_positive_paths(spec: ChainSpec, x0: int, steps: int):
    """All strictly-positive paths with their exact probabilities (cross-check
    oracle; capped by the caller at modest step counts)."""
    out: list[tuple[tuple[int, ...], Fraction]] = []

    def rec(path: list[int], prob: Fraction) -> None:
        if not prob:
            return
        if len(path) == steps + 1:
            out.append((tuple(path), prob))
            return
        k = path[-1]
        down, stay, up = transition(spec.kind, k, spec.field)
        for k2, p in ((k - 1, down), (k, stay), (k + 1, up)):
            if p and k2 >= 1:
                path.append(k2)
                rec(path, prob * p)
                path.pop()

    rec([x0], Fraction(1))
    return out


def planted_pmf(kind: str, x0: int, added_steps: int, f: Field) -> CorankPMF:
    """Exact final-corank law when a fixed corner of corank x0 is extended by
    `added_steps` uniform exposures."""
    spec = ChainSpec(kind=kind, field=f)
    return evolve(spec, delta_pmf(x0), added_steps)
