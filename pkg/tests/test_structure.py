from fractions import Fraction
from itertools import product

import pytest

from fqrank.errors import CodimensionTooLarge
from fqrank.field import field_new
from fqrank.models import EntryDist, near_uniform_dist, uniform_entry_dist
from fqrank.structure import (check_decoupling, check_unconc_implies_uniform,
                              diff_dist, f_abs, linear_form_pmf, quad_form_pmf,
                              rho, subspace_prob, threshold_set)

F3 = field_new(3)
HALF = EntryDist((Fraction(1, 2), Fraction(1, 2), Fraction(0)))


def test_f_abs_uniform():
    d = uniform_entry_dist(field_new(5))
    assert abs(f_abs(d, 0) - 1) < 1e-12
    for y in range(1, 5):
        assert f_abs(d, y) < 1e-12


def test_f_abs_half_mass_example():
    # |1/2 + 1/2 e^{2 pi i/3}| = 1/2
    assert abs(f_abs(HALF, 1) - 0.5) < 1e-12
    assert abs(f_abs(HALF, 0) - 1) < 1e-12


def test_threshold_set_contains_zero_and_bounded():
    for q in (3, 5, 7):
        f = field_new(q)
        d = near_uniform_dist(f, set(range(q // 2, q)))
        for K in (0.5, 1.0, 2.0):
            T = threshold_set(d, K)
            if K <= q**0.5:  # the cutoff K/sqrt(q) is <= |f(0)| = 1
                assert 0 in T
            assert len(T) <= float(d.C) * q / K**2 + 1e-9
    with pytest.raises(ValueError):
        threshold_set(HALF, 0)


def test_diff_dist():
    d = diff_dist(HALF)
    # x - x' for x, x' uniform on {0,1} over F_3: 0 w.p. 1/2, 1 and 2 w.p. 1/4
    assert d.probs == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))


def test_rho_uniform_is_zero():
    dists = [uniform_entry_dist(F3)] * 3
    rep = rho((1, 0, 2), dists)
    assert rep.rho < 1e-12


def test_rho_supported_inside_f():
    dists = [HALF, HALF]
    rep = rho((1, 1), dists, F=(0, 1))
    assert abs(rep.rho - 2 / 3) < 1e-12  # (q-1)/q


def test_rho_half_mass_example():
    rep = rho((1, 1), [HALF, HALF])
    assert abs(rep.rho - 1 / 6) < 1e-12
    assert len(rep.per_t_products) == 2


def test_rho_threshold_report():
    rep = rho((1, 1), [HALF, HALF], K=1.0)
    assert rep.T_sets is not None
    assert rep.meets_unstructured_condition(0)


def test_linear_form_pmf_against_enumeration():
    dists = [HALF, near_uniform_dist(F3, {2}), uniform_entry_dist(F3)]
    a = (1, 2, 1)
    pmf = linear_form_pmf(a, dists)
    direct = {v: Fraction(0) for v in range(3)}
    for xs in product(range(3), repeat=3):
        w = Fraction(1)
        for x, d in zip(xs, dists):
            w *= d.probs[x]
        direct[sum(c * x for c, x in zip(a, xs)) % 3] += w
    assert pmf == direct
    assert sum(pmf.values()) == 1


def test_linear_form_pmf_with_fixed():
    dists = [HALF, HALF]
    pmf = linear_form_pmf((1, 1), dists, fixed={1: 2})
    # x0 + 2 with x0 uniform on {0,1}
    assert pmf[2] == Fraction(1, 2) and pmf[0] == Fraction(1, 2)


def test_subspace_prob_basics():
    dists = [uniform_entry_dist(F3)] * 3
    # full space: probability 1
    full = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert subspace_prob(full, dists) == 1
    # hyperplane x0 + x1 + x2 = 0 under uniform entries: 1/q
    H = [(1, 0, 2), (0, 1, 2)]
    assert subspace_prob(H, dists) == Fraction(1, 3)


def test_subspace_prob_codimension_guard():
    dists = [uniform_entry_dist(F3)] * 5
    H = [(1, 0, 0, 0, 0)]  # codimension 4
    with pytest.raises(CodimensionTooLarge):
        subspace_prob(H, dists)


def test_unconc_implies_uniform_holds():
    dists = [HALF, near_uniform_dist(F3, {0}), HALF]
    H = [(1, 1, 0), (0, 1, 1)]
    lhs, delta, ok = check_unconc_implies_uniform(H, dists)
    assert ok
    assert lhs <= 2 * delta + Fraction(1, 10**12)


def test_quad_form_pmf_against_enumeration():
    dists = [HALF, uniform_entry_dist(F3)]
    B = [[1, 2], [0, 1]]
    b = [2, 1]
    pmf = quad_form_pmf(B, b, dists)
    direct = {v: Fraction(0) for v in range(3)}
    for xs in product(range(3), repeat=2):
        w = Fraction(1)
        for x, d in zip(xs, dists):
            w *= d.probs[x]
        val = sum(B[i][j] * xs[i] * xs[j] for i in range(2) for j in range(2))
        val += sum(c * x for c, x in zip(b, xs))
        direct[val % 3] += w
    assert pmf == direct


def test_decoupling_holds():
    dists = [HALF, near_uniform_dist(F3, {1}), uniform_entry_dist(F3)]
    A = [[1, 2, 0], [1, 1, 1], [0, 2, 1]]
    b = [0, 1, 2]
    lhs4, rhs, ok = check_decoupling(A, b, dists, I=[0])
    assert ok
    assert lhs4 <= rhs + Fraction(1, 10**12)
