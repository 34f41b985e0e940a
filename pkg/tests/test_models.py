from collections import Counter
from fractions import Fraction

import pytest

from fqrank.errors import EmptySupport, InvalidSpec
from fqrank.field import field_new
from fqrank.models import (EntryDist, ModelSpec, TypeFSpec, band_type_f,
                           corank_of_sample, derive_rng, near_uniform_dist,
                           sample, sample_gl, uniform_entry_dist,
                           validate_conditions)

F2 = field_new(2)
F3 = field_new(3)
F5 = field_new(5)


def test_entry_dist_validation():
    with pytest.raises(InvalidSpec):
        EntryDist((Fraction(1, 2), Fraction(1, 4)))  # does not sum to 1
    with pytest.raises(InvalidSpec):
        EntryDist((Fraction(3, 2), Fraction(-1, 2)))


def test_entry_dist_constant():
    assert uniform_entry_dist(F5).C == 1
    d = near_uniform_dist(F5, {0})
    assert d.C == Fraction(5, 4)
    assert d.probs[0] == 0


def test_near_uniform_validation():
    with pytest.raises(EmptySupport):
        near_uniform_dist(F2, {0, 1})
    with pytest.raises(InvalidSpec):
        near_uniform_dist(F2, {7})


def test_entry_dist_draw_matches_probs():
    d = EntryDist((Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)))
    rng = derive_rng(7)
    counts = Counter(d.draw_array(rng, 30000).tolist())
    for k, c in enumerate(d.probs):
        assert abs(counts[k] / 30000 - float(c)) < 0.02


def test_draw_one_and_array_share_support():
    d = near_uniform_dist(F5, {2, 3})
    rng = derive_rng(1)
    vals = set(d.draw_array(rng, 1000).tolist())
    vals.add(d.draw_one(rng))
    assert vals <= {0, 1, 4}


def test_derive_rng_deterministic_and_trial_keyed():
    a = derive_rng(5, 3).integers(0, 1 << 30, 8)
    b = derive_rng(5, 3).integers(0, 1 << 30, 8)
    c = derive_rng(5, 4).integers(0, 1 << 30, 8)
    assert a.tolist() == b.tolist()
    assert a.tolist() != c.tolist()


def test_model_spec_validation():
    with pytest.raises(InvalidSpec):
        ModelSpec(kind="nope", field=F3, n=2)
    with pytest.raises(InvalidSpec):
        ModelSpec(kind="alternating", field=F2, n=2)  # even q
    with pytest.raises(InvalidSpec):
        ModelSpec(kind="gl-corner", field=F3, n=4)  # missing n_prime
    with pytest.raises(InvalidSpec):
        ModelSpec(kind="iid-square", field=F3, n=2,
                  entries=uniform_entry_dist(F5))  # wrong length


def test_planted_validation():
    from fqrank.matrix import FqMatrix
    corner = FqMatrix.from_rows(F3, [[1, 2], [2, 0]])
    spec = ModelSpec(kind="planted-symmetric", field=F3, n=4, planted=corner)
    assert spec.shape == (4, 4)
    with pytest.raises(InvalidSpec):
        ModelSpec(kind="planted-alternating", field=F3, n=4, planted=corner)
    with pytest.raises(InvalidSpec):
        ModelSpec(kind="planted-symmetric", field=F3, n=1, planted=corner)


def test_json_roundtrip():
    d = near_uniform_dist(F5, {1})
    spec = ModelSpec(
        kind="iid-rect", field=F5, n=3, m=2, entries=d,
        overrides=((0, 1, uniform_entry_dist(F5)),),
        type_f=TypeFSpec(((0,), (1,)), ((2,), (0,))),
    )
    again = ModelSpec.from_json(spec.to_json())
    assert again == spec


def test_band_type_f():
    tf = band_type_f(5, 0.4)
    assert tf.sets[0] == (0, 1, 2)
    assert tf.sets[4] == (4,)
    assert tf.fixed_entries()[(1, 0)] == 0


def test_validate_conditions_reports():
    spec = ModelSpec(kind="iid-square", field=F5, n=40, type_f=band_type_f(40, 0.02))
    rep = validate_conditions(spec, 0.08)
    assert rep["all_ok"]
    crowded = TypeFSpec(tuple((0,) for _ in range(40)))
    spec = ModelSpec(kind="iid-square", field=F5, n=40, type_f=crowded)
    rep = validate_conditions(spec, 0.08)
    assert not rep["membership_ok"]


def test_sample_deterministic():
    spec = ModelSpec(kind="iid-square", field=F3, n=4)
    assert sample(spec, 9, 2) == sample(spec, 9, 2)
    assert sample(spec, 9, 2) != sample(spec, 9, 3)


def test_sample_symmetric_and_alternating_structure():
    sym = ModelSpec(kind="symmetric", field=F5, n=6)
    alt = ModelSpec(kind="alternating", field=F5, n=6)
    for t in range(5):
        assert sample(sym, 3, t).is_symmetric()
        assert sample(alt, 3, t).is_alternating()


def test_sample_respects_type_f():
    tf = TypeFSpec(((0, 1), (1,)), ((4, 0), (3,)))
    spec = ModelSpec(kind="iid-square", field=F5, n=3, type_f=tf)
    M = sample(spec, 11)
    assert M.get(0, 0) == 4 and M.get(1, 0) == 0 and M.get(1, 1) == 3


def test_sample_respects_overrides():
    point = EntryDist((Fraction(0), Fraction(0), Fraction(1)))
    spec = ModelSpec(kind="iid-square", field=F3, n=3,
                     overrides=((2, 1, point),))
    for t in range(5):
        assert sample(spec, 4, t).get(2, 1) == 2


def test_planted_corner_embedded():
    from fqrank.matrix import FqMatrix
    corner = FqMatrix.from_rows(F3, [[0, 1], [2, 0]])
    spec = ModelSpec(kind="planted-alternating", field=F3, n=5, planted=corner)
    M = sample(spec, 8)
    assert M.submatrix(2, 2) == corner
    assert M.is_alternating()


def test_sample_gl_invertible():
    for q, n in ((2, 3), (3, 4), (4, 3)):
        f = field_new(q)
        for t in range(4):
            assert sample_gl(n, f, 13, t).rank() == n


def test_gl_minus_identity_1x1_f2():
    spec = ModelSpec(kind="gl-minus-identity", field=F2, n=1)
    for t in range(4):
        assert corank_of_sample(spec, 5, t) == 1


def test_gl_corner_shape():
    spec = ModelSpec(kind="gl-corner", field=F3, n=6, n_prime=3)
    M = sample(spec, 2)
    assert (M.rows, M.cols) == (3, 3)


def test_corank_of_sample_matches_sample():
    for kind in ("iid-square", "symmetric", "alternating", "uniform-gl"):
        spec = ModelSpec(kind=kind, field=F3, n=4)
        for t in range(4):
            assert corank_of_sample(spec, 21, t) == sample(spec, 21, t).corank()


def test_extension_field_sampling():
    f4 = field_new(4)
    spec = ModelSpec(kind="symmetric", field=f4, n=4)
    M = sample(spec, 6)
    assert M.is_symmetric()
    assert corank_of_sample(spec, 6, 0) == M.corank()
