"""Acceptance suite: one test per criterion, printing one PASS/FAIL line each.

Everything is exact: no tolerances appear anywhere.  Random cases stay at
desk scale (grids up to 10 critical values, dimensions up to 8, fields
GF(2) and GF(5)).
"""

from __future__ import annotations

import functools
import random
from fractions import Fraction as F

from obspers.gfp import GF2, GF5, rank
from obspers.intervals import DecoratedInterval, interval
from obspers.decomposition import Barcode, barcode_formula, decompose, ob_barcode
from obspers.diagrams import (
    NEG_INF,
    POS_INF,
    Rectangle,
    diagram,
    measure,
    ob_isomorphic,
)
from obspers.distances import (
    bottleneck,
    build_interleaving,
    interleaving_distance,
    verify_interleaving,
)
from obspers.modules import (
    GridModule,
    cokernel,
    direct_sum,
    interval_module,
    is_ephemeral,
    morphism_validate,
    piece_of,
    random_module,
)
from obspers.observable import (
    bar,
    is_weak_iso,
    limiting_ranks,
    nat_n,
    ob_compose,
    ob_equal,
    ob_hom_dim,
    ob_identity,
    ob_invert,
    ob_morphism_space_dim,
    project,
    radical,
    radical_inclusion,
    strict_rank,
    underbar,
)
from obspers.testkit import (
    brute_bottleneck,
    brute_multiplicity,
    conjugate_random_iso,
    jitter_weak_iso,
    random_diagram,
    random_ephemeral,
    random_submodule_inclusion,
)

FIELDS = (GF2, GF5)


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"{name}: FAIL")
                raise
            print(f"{name}: PASS")
        return wrapper
    return decorate


def _desk_module(seed: int) -> GridModule:
    rng = random.Random(seed)
    field = FIELDS[seed % 2]
    if seed % 50 == 17:
        return random_module(seed, field, 10, 8)  # occasional full desk scale
    return random_module(seed, field, rng.randint(0, 5), rng.randint(0, 5))


@criterion("criterion-01 decomposition soundness")
def test_criterion_1_decomposition_soundness():
    for seed in range(500):
        v = _desk_module(seed)
        dec = decompose(v)
        assert dec.barcode == barcode_formula(v), seed
        assert dec.iso.target == v, seed
        assert morphism_validate(dec.iso), seed
        for comp, d in zip(dec.iso.comps, v.dims):
            assert comp.rows == comp.cols == d and rank(comp) == d, seed


@criterion("criterion-02 barcode uniqueness and observable completeness")
def test_criterion_2_uniqueness_observable_completeness():
    for seed in range(200):
        v = _desk_module(seed)
        w, _ = jitter_weak_iso(v, seed + 1)
        assert ob_barcode(v) == ob_barcode(w), seed
        assert diagram(v) == diagram(w), seed
        assert ob_isomorphic(v, w), seed
    for seed in range(200):
        rng = random.Random(90_000 + seed)
        v = _desk_module(3 * seed + 1)
        w = random_module(3 * seed + 2, v.field, rng.randint(0, 5),
                          rng.randint(0, 5))
        if diagram(v) == diagram(w):
            extra = interval_module(v.field, interval("(100, 101)"),
                                    (F(100), F(101)))
            w = direct_sum([w, extra])
        assert not ob_isomorphic(v, w), seed


@criterion("criterion-03 four-decoration collapse and ob-hom table")
def test_criterion_3_decoration_collapse():
    decorations = ["[1, 2]", "[1, 2)", "(1, 2]", "(1, 2)"]
    mods = [interval_module(GF2, interval(t), (F(1), F(2))) for t in decorations]
    for i in range(4):
        for j in range(i + 1, 4):
            assert ob_isomorphic(mods[i], mods[j])

    rng = random.Random(33)
    checked = 0
    while checked < 100:
        crit = sorted(rng.sample([F(k) for k in range(-5, 6)], 4))

        def pick():
            style = rng.random()
            if style < 0.12:
                return DecoratedInterval(None, False, rng.choice(crit), rng.random() < 0.5)
            if style < 0.24:
                return DecoratedInterval(rng.choice(crit), rng.random() < 0.5, None, False)
            if style < 0.3:
                return DecoratedInterval(None, False, None, False)
            lo, hi = sorted(rng.sample(crit, 2))
            return DecoratedInterval(lo, rng.random() < 0.5, hi, rng.random() < 0.5)

        i_iv, j_iv = pick(), pick()
        vi = interval_module(GF5, i_iv, crit)
        vj = interval_module(GF5, j_iv, crit)
        assert ob_hom_dim(i_iv, j_iv) == ob_morphism_space_dim(vi, vj), (i_iv, j_iv)
        checked += 1


@criterion("criterion-04 measure calculus")
def test_criterion_4_measure_calculus():
    rng = random.Random(404)
    for case in range(500):
        v = _desk_module(case + 7_000)
        crit = set(v.criticals)

        def fresh(lo, hi, avoid=None):
            # strictly disjoint bands keep the four corners ordered
            while True:
                x = F(rng.randint(lo * 8, hi * 8), 8) + F(1, 16)
                if x not in crit and x != avoid:
                    return x

        a = NEG_INF if rng.random() < 0.15 else fresh(-12, -9)
        b = fresh(-8, -5)
        c = fresh(-4, 2)
        d = POS_INF if rng.random() < 0.15 else fresh(3, 10)
        r = Rectangle(a, b, c, d)
        total = measure(v, r)
        assert total >= 0, case

        # exact additivity under a split of [a, b] at e
        e = fresh(-8, -5, avoid=b)
        lo_b, hi_b = min(b, e), max(b, e)
        outer = Rectangle(a, hi_b, c, d)
        assert measure(v, outer) == (measure(v, Rectangle(a, lo_b, c, d))
                                     + measure(v, Rectangle(lo_b, hi_b, c, d))), case
        # and of [c, d] at g
        g = fresh(-4, 2, avoid=c)
        lo_c, hi_c = min(c, g), max(c, g)
        inner = Rectangle(a, b, lo_c, d)
        assert measure(v, inner) == (measure(v, Rectangle(a, b, lo_c, hi_c))
                                     + measure(v, Rectangle(a, b, hi_c, d))), case

        # monotone under nesting
        a2 = a if a == NEG_INF else max(a, fresh(-12, -9))
        d2 = d if d == POS_INF else min(d, fresh(3, 10))
        shrunk = Rectangle(fresh(-12, -9) if a2 == NEG_INF else a2, b, c,
                           fresh(3, 10) if d2 == POS_INF else d2)
        assert measure(v, shrunk) <= total, case

        # subspace-lattice oracle agrees
        pa = None if a == NEG_INF else piece_of(v.criticals, a)
        pd = None if d == POS_INF else piece_of(v.criticals, d)
        oracle = brute_multiplicity(v, pa, piece_of(v.criticals, b),
                                    piece_of(v.criticals, c), pd)
        assert total == oracle, case


@criterion("criterion-05 limiting rank chain and observability")
def test_criterion_5_limiting_ranks():
    for seed in range(200):
        v = random_module(seed, FIELDS[seed % 2], 4, 5)
        variants = (bar(v), underbar(v), radical(v))
        crit = v.criticals
        for i in range(len(crit)):
            for j in range(i + 1, len(crit)):
                lr = limiting_ranks(v, crit[i], crit[j])
                middle = (lr.closed_open, lr.open_closed,
                          strict_rank(v, crit[i], crit[j]))
                assert all(lr.closed_closed <= m <= lr.open_open for m in middle), seed
                for other in variants:
                    assert limiting_ranks(other, crit[i], crit[j]) == lr, seed


@criterion("criterion-06 ephemeral Serre condition")
def test_criterion_6_serre_condition():
    for seed in range(200):
        if seed % 3 == 2:
            # start from an ephemeral total module: both factors must be too
            v = random_ephemeral(seed, FIELDS[seed % 2], (F(0), F(1), F(2)), 4)
        else:
            v = _desk_module(seed + 11_000)
        incl = random_submodule_inclusion(v, seed)
        sub = incl.source
        quot = cokernel(incl)
        assert morphism_validate(incl), seed
        assert is_ephemeral(v) == (is_ephemeral(sub) and is_ephemeral(quot)), seed


@criterion("criterion-07 weak isomorphism inversion")
def test_criterion_7_weak_iso_inversion():
    def check_two_sided(f):
        phi = project(f)
        psi = ob_invert(phi)
        assert ob_equal(ob_compose(psi, phi), ob_identity(f.source))
        assert ob_equal(ob_compose(phi, psi), ob_identity(f.target))

    for seed in range(200):
        v = _desk_module(seed + 23_000)
        w, f = jitter_weak_iso(v, seed)
        assert is_weak_iso(f), seed
        check_two_sided(f)
        check_two_sided(nat_n(v))
        check_two_sided(radical_inclusion(v))


def _open_bar_pair(seed: int, eps: F, moves):
    """Two direct sums of open-interval modules with endpoints moved by
    amounts drawn from `moves`, each conjugated by a random basis change."""
    rng = random.Random(seed)
    field = FIELDS[seed % 2]
    summands_v, summands_w = [], []
    for _ in range(rng.randint(1, 4)):
        style = rng.random()
        p = F(rng.randint(-10, 8), 2)
        q = p + F(rng.randint(1, 10), 2)
        left = None if style < 0.1 else p
        right = None if 0.1 <= style < 0.18 else q
        dl, dr = rng.choice(moves), rng.choice(moves)
        left_w = None if left is None else left + dl
        right_w = None if right is None else right + dr
        if left_w is not None and right_w is not None and left_w >= right_w:
            dl = dr = F(0)
            left_w, right_w = left, right
        iv_v = DecoratedInterval(left, False, right, False)
        iv_w = DecoratedInterval(left_w, False, right_w, False)
        summands_v.append(interval_module(
            field, iv_v, [c for c in (left, right) if c is not None]))
        summands_w.append(interval_module(
            field, iv_w, [c for c in (left_w, right_w) if c is not None]))
    v = direct_sum(summands_v, field=field)
    w = direct_sum(summands_w, field=field)
    v, _ = conjugate_random_iso(v, rng.randrange(2 ** 30))
    w, _ = conjugate_random_iso(w, rng.randrange(2 ** 30))
    return v, w


@criterion("criterion-08 stability and isometry, end to end")
def test_criterion_8_stability_isometry():
    eps = F(1, 2)
    for seed in range(200):
        # attainment pairs: open decorations, endpoint moves up to +-eps
        v, w = _open_bar_pair(seed, eps, (F(0), eps / 2, -eps / 2, eps, -eps))
        value, witness = bottleneck(diagram(v), diagram(w))
        assert value <= eps, seed
        forward = build_interleaving(v, w, witness, eps)
        assert verify_interleaving(v, w, forward), seed
        at_optimum = build_interleaving(v, w, witness, value)
        assert verify_interleaving(v, w, at_optimum), seed
        assert interleaving_distance(v, w) == value, seed

        # observable pairs: decorations jittered, moves strictly inside eps
        v2base, w2base = _open_bar_pair(seed + 900_000, eps,
                                        (F(0), eps / 4, -eps / 4, eps / 2, -eps / 2))
        v2, _ = jitter_weak_iso(v2base, seed + 1)
        w2, _ = jitter_weak_iso(w2base, seed + 2)
        value2, witness2 = bottleneck(diagram(v2), diagram(w2))
        assert value2 == bottleneck(diagram(v2base), diagram(w2base))[0], seed
        assert value2 <= eps / 2, seed
        jittered = build_interleaving(v2, w2, witness2, eps)
        assert verify_interleaving(v2, w2, jittered), seed
        assert interleaving_distance(v2, w2) == value2, seed


@criterion("criterion-09 bottleneck exactness against brute force")
def test_criterion_9_bottleneck_exact():
    for seed in range(500):
        d1 = random_diagram(seed, 3)
        d2 = random_diagram(seed + 500_000, 3)
        value, witness = bottleneck(d1, d2)
        assert value == brute_bottleneck(d1, d2), seed
        assert witness.cost == value, seed


@criterion("criterion-10 truncated nested-interval family")
def test_criterion_10_truncated_family():
    for n_max in range(1, 7):
        crit = sorted({F(s, n) for n in range(1, n_max + 1) for s in (-1, 1)})
        total = direct_sum([
            interval_module(GF2, DecoratedInterval(F(-1, n), True, F(1, n), True),
                            crit)
            for n in range(1, n_max + 1)
        ])
        rad = radical(total)
        expected = Barcode.from_intervals([
            DecoratedInterval(F(-1, n), False, F(1, n), True)
            for n in range(1, n_max + 1)
        ])
        assert decompose(rad).barcode == expected, n_max
        assert barcode_formula(rad) == expected, n_max
        assert is_weak_iso(radical_inclusion(total)), n_max
