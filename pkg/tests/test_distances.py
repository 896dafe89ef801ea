from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from obspers.gfp import GF2, GF5, Mat
from obspers.diagrams import NEG_INF, POS_INF, Diagram, DiagramPoint, diagram
from obspers.distances import (
    Interleaving,
    bottleneck,
    build_interleaving,
    diagonal_gap,
    dinf,
    interleaving_distance,
    shift,
    shift_map,
    verify_interleaving,
)
from obspers.modules import (
    morphism_validate,
    random_module,
    refine,
    zero_module,
    zero_morphism,
)
from obspers.observable import radical
from obspers.testkit import brute_bottleneck, random_diagram
from conftest import make_interval_module


def pt(p, q):
    return DiagramPoint(p if p in (NEG_INF, POS_INF) else F(p),
                        q if q in (NEG_INF, POS_INF) else F(q))


def test_dinf_examples():
    assert dinf(pt(0, 2), pt(0, 2)) == 0
    assert dinf(pt(0, 2), pt(1, F(5, 2))) == 1
    assert dinf(pt(NEG_INF, 2), pt(0, 2)) == POS_INF
    assert dinf(pt(NEG_INF, 2), pt(NEG_INF, 3)) == 1
    assert dinf(pt(NEG_INF, POS_INF), pt(NEG_INF, POS_INF)) == 0


def test_diagonal_gap_examples():
    assert diagonal_gap(pt(0, 2)) == 1
    assert diagonal_gap(pt(3, 3 + 2 * F(7, 4))) == F(7, 4)
    assert diagonal_gap(pt(NEG_INF, 3)) == POS_INF
    assert diagonal_gap(pt(0, POS_INF)) == POS_INF


def test_bottleneck_single_point_versus_empty():
    d1 = Diagram.from_points([pt(0, 2)])
    value, witness = bottleneck(d1, Diagram.from_points([]))
    assert value == 1
    assert witness.pairs == () and witness.unmatched1 == (0,)
    assert witness.cost == 1


def test_bottleneck_prefers_matching():
    d1 = Diagram.from_points([pt(0, 3)])
    d2 = Diagram.from_points([pt(F(1, 2), F(7, 2))])
    value, witness = bottleneck(d1, d2)
    assert value == F(1, 2)
    assert witness.pairs == ((0, 0),)


def test_bottleneck_identical_diagrams():
    d = Diagram.from_points([pt(0, 2), pt(1, 4), pt(NEG_INF, 1)])
    value, witness = bottleneck(d, d)
    assert value == 0
    assert len(witness.pairs) == 3
    assert witness.unmatched1 == () and witness.unmatched2 == ()


def test_bottleneck_infinite_class_mismatch():
    d1 = Diagram.from_points([pt(NEG_INF, 1)])
    d2 = Diagram.from_points([pt(0, 2)])
    value, _ = bottleneck(d1, d2)
    assert value == POS_INF


def test_bottleneck_infinite_classes_sorted_pairing():
    d1 = Diagram.from_points([pt(0, POS_INF), pt(5, POS_INF)])
    d2 = Diagram.from_points([pt(1, POS_INF), pt(4, POS_INF)])
    value, witness = bottleneck(d1, d2)
    assert value == 1
    assert len(witness.pairs) == 2


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_bottleneck_matches_brute_force(seed):
    d1 = random_diagram(seed, 3)
    d2 = random_diagram(seed + 77_777, 3)
    if len(d1) + len(d2) > 7:
        return
    value, witness = bottleneck(d1, d2)
    assert value == brute_bottleneck(d1, d2)
    assert witness.cost == value


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_bottleneck_witness_partitions_indices(seed):
    d1 = random_diagram(seed, 4)
    d2 = random_diagram(seed + 31_337, 4)
    _, witness = bottleneck(d1, d2)
    left = sorted([i for i, _ in witness.pairs] + list(witness.unmatched1))
    right = sorted([j for _, j in witness.pairs] + list(witness.unmatched2))
    assert left == list(range(len(d1)))
    assert right == list(range(len(d2)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_bottleneck_triangle_inequality(seed):
    d1 = random_diagram(seed, 3)
    d2 = random_diagram(seed + 1, 3)
    d3 = random_diagram(seed + 2, 3)
    d12 = bottleneck(d1, d2)[0]
    d23 = bottleneck(d2, d3)[0]
    d13 = bottleneck(d1, d3)[0]
    assert d13 <= d12 + d23


def test_shift_examples():
    v = make_interval_module(GF2, "[1, 2]", (1, 2))
    assert shift(v, 0) == v
    assert shift(v, 1) == make_interval_module(GF2, "[0, 1]", (0, 1))
    assert shift(shift(v, F(1, 2)), F(1, 2)) == shift(v, 1)
    from obspers.modules import evaluate_dim

    for t in (F(0), F(1), F(3, 2), F(2)):
        assert evaluate_dim(shift(v, F(1, 4)), t) == evaluate_dim(v, t + F(1, 4))


def test_shift_map_zero_is_identity():
    v = make_interval_module(GF5, "[1, 2]", (1, 2))
    f = shift_map(v, 0)
    assert f.source == v and f.target == v
    assert all(c == Mat.identity(d, GF5) for c, d in zip(f.comps, v.dims))
    with pytest.raises(ValueError):
        shift_map(v, -1)


def test_shift_map_overlap():
    v = make_interval_module(GF5, "[0, 3]", (0, 3))
    f = shift_map(v, 1)
    assert morphism_validate(f)
    from obspers.modules import piece_rep

    # nonzero exactly where t and t+1 both lie in [0, 3], i.e. t in [0, 2]
    for k in range(f.source.n_pieces):
        t = piece_rep(f.source.criticals, k)
        comp = f.comps[k]
        is_nonzero = comp.rows * comp.cols > 0 and not comp.is_zero()
        assert is_nonzero == (F(0) <= t <= F(2))


def test_shift_map_past_support_is_zero():
    v = make_interval_module(GF5, "(0, 1)", (0, 1))
    f = shift_map(v, 1)
    assert all(c.is_zero() for c in f.comps)


def test_verify_identity_interleaving():
    v = random_module(8, GF5, 2, 3)
    from obspers.modules import identity_morphism

    il = Interleaving(F(0), identity_morphism(v), identity_morphism(v))
    assert verify_interleaving(v, v, il)


def test_verify_zero_interleaving_short_interval():
    v = make_interval_module(GF2, "(0, 1)", (0, 1))
    w = zero_module(GF2)
    eps = F(1, 2)
    fwd = zero_morphism(v, refine(shift(w, eps), v.criticals))
    bwd_grid = tuple(c - eps for c in v.criticals)
    bwd = zero_morphism(refine(w, bwd_grid), refine(shift(v, eps), bwd_grid))
    il = Interleaving(eps, fwd, bwd)
    assert verify_interleaving(v, w, il)


def test_verify_rejects_wrong_epsilon():
    # the same zero interleaving fails when the interval is too long
    v = make_interval_module(GF2, "(0, 2)", (0, 2))
    w = zero_module(GF2)
    eps = F(1, 2)
    fwd = zero_morphism(v, refine(shift(w, eps), v.criticals))
    bwd_grid = tuple(c - eps for c in v.criticals)
    bwd = zero_morphism(refine(w, bwd_grid), refine(shift(v, eps), bwd_grid))
    il = Interleaving(eps, fwd, bwd)
    assert not verify_interleaving(v, w, il)


def test_verify_rejects_perturbed_interleaving():
    v = make_interval_module(GF5, "(0, 2)", (0, 2))
    w = make_interval_module(GF5, "(0, 2)", (0, 2))
    value, witness = bottleneck(diagram(v), diagram(w))
    il = build_interleaving(v, w, witness, F(1, 4))
    assert verify_interleaving(v, w, il)
    broken_comps = []
    for comp in il.fwd.comps:
        if not comp.is_zero():
            ent = list(comp.entries)
            ent[0] = (ent[0] * 2) % 5
            broken_comps.append(Mat(comp.rows, comp.cols, tuple(ent), GF5))
        else:
            broken_comps.append(comp)
    broken = Interleaving(il.epsilon,
                          type(il.fwd)(il.fwd.source, il.fwd.target,
                                       tuple(broken_comps)),
                          il.bwd)
    assert not verify_interleaving(v, w, broken)


def test_build_identity_interleaving():
    v = random_module(12, GF5, 2, 3)
    value, witness = bottleneck(diagram(v), diagram(v))
    assert value == 0
    il = build_interleaving(v, v, witness, 0)
    assert verify_interleaving(v, v, il)


def test_build_matched_translate():
    v = make_interval_module(GF2, "(0, 2)", (0, 2))
    w = make_interval_module(GF2, "(1/2, 5/2)", (F(1, 2), F(5, 2)))
    value, witness = bottleneck(diagram(v), diagram(w))
    assert value == F(1, 2)
    il = build_interleaving(v, w, witness, F(1, 2))
    assert verify_interleaving(v, w, il)


def test_build_unmatched_short_bar():
    v = make_interval_module(GF2, "(0, 1)", (0, 1))
    w = zero_module(GF2)
    value, witness = bottleneck(diagram(v), diagram(w))
    assert value == F(1, 2)
    il = build_interleaving(v, w, witness, F(1, 2))
    assert verify_interleaving(v, w, il)


def test_build_rejects_eps_below_cost():
    v = make_interval_module(GF2, "(0, 2)", (0, 2))
    w = zero_module(GF2)
    _, witness = bottleneck(diagram(v), diagram(w))
    with pytest.raises(ValueError):
        build_interleaving(v, w, witness, F(1, 2))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_stability_direction(seed):
    # any verified interleaving bounds the bottleneck distance
    from obspers.testkit import jitter_weak_iso

    v = random_module(seed, GF2, 2, 2)
    w, _ = jitter_weak_iso(v, seed + 1)
    value, witness = bottleneck(diagram(v), diagram(w))
    for eps in (value + F(1, 4), value + 1):
        il = build_interleaving(v, w, witness, eps)
        if verify_interleaving(v, w, il):
            assert value <= il.epsilon


def test_bottleneck_respects_multiplicities():
    d1 = Diagram.from_points([pt(0, 2)] * 3)
    d2 = Diagram.from_points([pt(F(1, 4), F(9, 4))] * 3)
    value, witness = bottleneck(d1, d2)
    assert value == F(1, 4)
    assert len(witness.pairs) == 3
    from obspers.testkit import brute_bottleneck

    assert value == brute_bottleneck(d1, d2)


def test_verify_raises_on_grid_incompatibility():
    v = make_interval_module(GF2, "(0, 2)", (0, 2))
    w = make_interval_module(GF2, "(0, 2)", (0, 2))
    from obspers.modules import identity_morphism

    # fwd pretends to land in w itself instead of shift(w, eps)
    il = Interleaving(F(1, 2), identity_morphism(v), identity_morphism(w))
    with pytest.raises(ValueError):
        verify_interleaving(v, w, il)


def test_interleaving_distance_examples():
    v = make_interval_module(GF2, "[1, 2]", (1, 2))
    assert interleaving_distance(v, v) == 0
    assert interleaving_distance(v, radical(v)) == 0
    a = make_interval_module(GF2, "(0, 2)", (0, 2))
    b = make_interval_module(GF2, "(0, 3)", (0, 3))
    assert interleaving_distance(a, b) == 1
    with pytest.raises(ValueError):
        interleaving_distance(v, make_interval_module(GF5, "[1, 2]", (1, 2)))


def test_interleaving_distance_zero_iff_ob_isomorphic():
    from obspers.diagrams import ob_isomorphic

    for seed in range(12):
        v = random_module(seed, GF2, 2, 2)
        w = random_module(seed + 50, GF2, 2, 2)
        assert (interleaving_distance(v, w) == 0) == ob_isomorphic(v, w)
