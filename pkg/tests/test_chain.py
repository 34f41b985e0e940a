from fractions import Fraction

import pytest

from fqrank.chain import (ChainSpec, delta_pmf, enumerate_positive_paths,
                          evolve, hit_zero_prob, most_likely_positive_path,
                          path_probability, planted_pmf, transition)
from fqrank.distributions import uniform_alt_pmf, uniform_sym_pmf, uniform_square_pmf
from fqrank.errors import EvenCharacteristic
from fqrank.field import field_new

F2 = field_new(2)
F3 = field_new(3)


def test_chain_spec_validation():
    with pytest.raises(ValueError):
        ChainSpec("nope", F3)
    with pytest.raises(EvenCharacteristic):
        ChainSpec("alternating", F2)
    with pytest.raises(ValueError):
        ChainSpec("iid-column", F3)  # missing n


def test_transition_known_values():
    assert transition("symmetric", 0, F2) == (0, Fraction(1, 2), Fraction(1, 2))
    assert transition("alternating", 0, F3) == (0, 0, 1)
    assert transition("symmetric", 1, F3) == (
        Fraction(2, 3), Fraction(2, 9), Fraction(1, 9))


def test_transitions_sum_to_one():
    for kind in ("symmetric", "alternating", "iid-column"):
        for k in range(5):
            down, stay, up = transition(kind, k, F3)
            assert down + stay + up == 1
            if k == 0:
                assert down == 0


def test_evolve_matches_closed_forms():
    for q in (2, 3):
        f = field_new(q)
        for n in (1, 3, 5):
            sym = evolve(ChainSpec("symmetric", f), delta_pmf(0), n)
            assert sym.as_dict() == uniform_sym_pmf(n, f).as_dict()
            iid = evolve(ChainSpec("iid-column", f, n=n), delta_pmf(0), n)
            assert iid.as_dict() == uniform_square_pmf(n, f).as_dict()
            if q % 2:
                alt = evolve(ChainSpec("alternating", f), delta_pmf(0), n)
                assert alt.as_dict() == uniform_alt_pmf(n, f).as_dict()


def test_iid_column_two_steps_example():
    pmf = evolve(ChainSpec("iid-column", F2, n=2), delta_pmf(0), 2)
    assert pmf.as_dict() == {0: Fraction(6, 16), 1: Fraction(9, 16), 2: Fraction(1, 16)}


def test_hit_zero_prob():
    spec = ChainSpec("symmetric", F3)
    assert hit_zero_prob(spec, 0, 0) == 1
    p4 = hit_zero_prob(spec, 2, 4)
    p8 = hit_zero_prob(spec, 2, 8)
    assert 0 < p4 < p8 < 1  # monotone in steps
    # one step from corank 1: exactly the down probability
    assert hit_zero_prob(spec, 1, 1) == Fraction(2, 3)


def test_path_probability():
    spec = ChainSpec("symmetric", F3)
    assert path_probability(spec, [2, 1, 0]) == \
        Fraction(8, 9) * Fraction(2, 3)
    assert path_probability(spec, [2, 0]) == 0  # jumps of 2 impossible


def test_most_likely_path_matches_enumeration():
    for kind, q in (("symmetric", 2), ("symmetric", 3), ("alternating", 3)):
        spec = ChainSpec(kind, field_new(q))
        for x0 in (1, 2, 3):
            for steps in (2, 5, 6):
                path, prob = most_likely_positive_path(spec, x0, steps)
                assert len(path) == steps + 1
                assert path_probability(spec, path) == prob
                best = max(p for _, p in enumerate_positive_paths(spec, x0, steps))
                assert prob == best


def test_planted_pmf_from_zero_matches_uniform():
    for q in (2, 3):
        f = field_new(q)
        pmf = planted_pmf("symmetric", 0, 4, f)
        assert pmf.as_dict() == uniform_sym_pmf(4, f).as_dict()
    pmf = planted_pmf("alternating", 1, 4, F3)
    assert all(k % 2 == 1 for k, _ in pmf.support)
