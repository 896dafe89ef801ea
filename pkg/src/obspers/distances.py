"""Bottleneck distance on diagrams; interleavings between modules.

The bottleneck optimum is exact: the candidate costs are the finitely many
pairwise sup-distances and diagonal gaps, and feasibility of a threshold is
decided by maximum bipartite matching (augmenting paths) in the standard
point-plus-diagonal-slot graph.  Points with an infinite coordinate can
never retire to the diagonal, so each infinity class is matched separately
by sorted pairing.

Interleavings are represented by genuine morphisms into shifted modules;
verification composes them on a common refined grid and compares against
the doubled shift map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gfp import Mat
from .intervals import DecoratedInterval
from .modules import (
    GridModule,
    Morphism,
    composite_map,
    morphism_compose,
    morphism_invert,
    morphism_validate,
    piece_interval,
    piece_of,
    piece_rep,
    refine,
    refine_morphism,
)
from .decomposition import Decomposition, decompose
from .diagrams import (
    NEG_INF,
    POS_INF,
    Diagram,
    DiagramPoint,
    diagram,
    interval_to_point,
)


def _coord_dist(a, b):
    if a == b:
        return Fraction(0)
    if a in (NEG_INF, POS_INF) or b in (NEG_INF, POS_INF):
        return POS_INF
    return abs(a - b)


def dinf(x: DiagramPoint, y: DiagramPoint):
    """Sup distance on the extended half-plane."""
    return max(_coord_dist(x.p, y.p), _coord_dist(x.q, y.q))


def diagonal_gap(x: DiagramPoint):
    """Sup distance from a point to the diagonal: (q - p) / 2, or infinity."""
    if x.p == NEG_INF or x.q == POS_INF:
        return POS_INF
    return (x.q - x.p) / 2


@dataclass(frozen=True)
class Matching:
    """A partial matching between two expanded diagrams, with its cost.

    Indices refer to Diagram.expand() order on either side.
    """

    pairs: tuple[tuple[int, int], ...]
    unmatched1: tuple[int, ...]
    unmatched2: tuple[int, ...]
    cost: object  # Fraction or +inf


def matching_cost(pts1, pts2, pairs, unmatched1, unmatched2):
    costs = [dinf(pts1[i], pts2[j]) for i, j in pairs]
    costs += [diagonal_gap(pts1[i]) for i in unmatched1]
    costs += [diagonal_gap(pts2[j]) for j in unmatched2]
    return max(costs, default=Fraction(0))


def _infinity_class(pt: DiagramPoint) -> tuple[bool, bool]:
    return (pt.p == NEG_INF, pt.q == POS_INF)


def _max_matching(n_left: int, n_right: int, adj) -> list[int]:
    """Kuhn's augmenting paths; returns right->left assignment (-1 unmatched)."""
    match_r = [-1] * n_right

    def try_augment(u: int, seen: list[bool]) -> bool:
        for t in adj[u]:
            if not seen[t]:
                seen[t] = True
                if match_r[t] == -1 or try_augment(match_r[t], seen):
                    match_r[t] = u
                    return True
        return False

    for u in range(n_left):
        try_augment(u, [False] * n_right)
    return match_r


def bottleneck(d1: Diagram, d2: Diagram):
    """Exact bottleneck distance and an optimal witness matching."""
    pts1, pts2 = d1.expand(), d2.expand()
    pairs: list[tuple[int, int]] = []
    unmatched1: list[int] = []
    unmatched2: list[int] = []
    worst = Fraction(0)

    fin1 = [i for i, p in enumerate(pts1) if _infinity_class(p) == (False, False)]
    fin2 = [j for j, p in enumerate(pts2) if _infinity_class(p) == (False, False)]

    # Infinity classes must pair within themselves; sorted pairing is optimal.
    for klass, key in (((True, False), lambda pt: pt.q),
                       ((False, True), lambda pt: pt.p),
                       ((True, True), lambda pt: 0)):
        c1 = sorted((i for i, p in enumerate(pts1) if _infinity_class(p) == klass),
                    key=lambda i: key(pts1[i]))
        c2 = sorted((j for j, p in enumerate(pts2) if _infinity_class(p) == klass),
                    key=lambda j: key(pts2[j]))
        for i, j in zip(c1, c2):
            pairs.append((i, j))
            worst = max(worst, dinf(pts1[i], pts2[j]))
        if len(c1) != len(c2):
            worst = POS_INF
            unmatched1.extend(c1[len(c2):])
            unmatched2.extend(c2[len(c1):])

    n1, n2 = len(fin1), len(fin2)
    if n1 or n2:
        dist = [[dinf(pts1[i], pts2[j]) for j in fin2] for i in fin1]
        gap1 = [diagonal_gap(pts1[i]) for i in fin1]
        gap2 = [diagonal_gap(pts2[j]) for j in fin2]
        candidates = sorted({Fraction(0), *gap1, *gap2,
                             *(d for row in dist for d in row)})

        def feasible(tau) -> list[int] | None:
            # left: n1 points + n2 diagonal slots; right: n2 points + n1 slots
            adj = []
            for a in range(n1):
                row = [b for b in range(n2) if dist[a][b] <= tau]
                if gap1[a] <= tau:
                    row += list(range(n2, n2 + n1))
                adj.append(row)
            for b in range(n2):
                row = list(range(n2, n2 + n1))
                if gap2[b] <= tau:
                    row.append(b)
                adj.append(row)
            match_r = _max_matching(n1 + n2, n1 + n2, adj)
            return match_r if sum(1 for m in match_r if m != -1) == n1 + n2 else None

        lo, hi = 0, len(candidates) - 1
        best = feasible(candidates[hi])
        assert best is not None  # everything may retire to the diagonal
        while lo < hi:
            mid = (lo + hi) // 2
            attempt = feasible(candidates[mid])
            if attempt is not None:
                best, hi = attempt, mid
            else:
                lo = mid + 1
        worst = max(worst, candidates[hi])

        matched_left = set()
        for t in range(n2):
            u = best[t]
            if u != -1 and u < n1:
                pairs.append((fin1[u], fin2[t]))
                matched_left.add(u)
        unmatched1.extend(fin1[u] for u in range(n1) if u not in matched_left)
        matched_right = {t for t in range(n2) if best[t] != -1 and best[t] < n1}
        unmatched2.extend(fin2[t] for t in range(n2) if t not in matched_right)

    witness = Matching(tuple(sorted(pairs)), tuple(sorted(unmatched1)),
                       tuple(sorted(unmatched2)), worst)
    return worst, witness


# ---------------------------------------------------------------------------
# Shifts and interleavings


def shift(v: GridModule, eps) -> GridModule:
    """Translate so that the shifted module at t is the original at t + eps."""
    eps = Fraction(eps)
    return GridModule(v.field, tuple(c - eps for c in v.criticals), v.dims, v.maps)


def shift_of_morphism(f: Morphism, eps) -> Morphism:
    return Morphism(shift(f.source, eps), shift(f.target, eps), f.comps)


def shift_interval(iv: DecoratedInterval, eps) -> DecoratedInterval:
    eps = Fraction(eps)
    left = None if iv.left is None else iv.left - eps
    right = None if iv.right is None else iv.right - eps
    return DecoratedInterval(left, iv.left_closed, right, iv.right_closed)


def shift_map(v: GridModule, eps) -> Morphism:
    """The morphism from v to shift(v, eps) given by the structure maps."""
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("shift_map needs eps >= 0")
    grid = sorted(set(v.criticals) | {c - eps for c in v.criticals})
    src = refine(v, grid)
    tgt = refine(shift(v, eps), grid)
    comps = []
    for k in range(src.n_pieces):
        t = piece_rep(src.criticals, k)
        comps.append(composite_map(v, piece_of(v.criticals, t),
                                   piece_of(v.criticals, t + eps)))
    return Morphism(src, tgt, tuple(comps))


@dataclass(frozen=True)
class Interleaving:
    """Cross maps fwd: V -> shift(W, eps) and bwd: W -> shift(V, eps)."""

    epsilon: Fraction
    fwd: Morphism
    bwd: Morphism


def _check_refines(base: GridModule, mod: GridModule, what: str) -> None:
    if refine(base, mod.criticals) != mod:
        raise ValueError(f"grid incompatibility: {what} is not a refinement")


def verify_interleaving(v: GridModule, w: GridModule, il: Interleaving) -> bool:
    """Both composites equal the doubled shift maps, and both maps are natural."""
    eps = Fraction(il.epsilon)
    if eps < 0:
        raise ValueError("interleaving epsilon must be nonnegative")
    _check_refines(v, il.fwd.source, "fwd source")
    _check_refines(shift(w, eps), il.fwd.target, "fwd target")
    _check_refines(w, il.bwd.source, "bwd source")
    _check_refines(shift(v, eps), il.bwd.target, "bwd target")
    if not (morphism_validate(il.fwd) and morphism_validate(il.bwd)):
        return False

    def composite_matches(fwd, bwd, base):
        grid = (set(fwd.source.criticals)
                | {c - eps for c in bwd.source.criticals}
                | set(base.criticals)
                | {c - 2 * eps for c in base.criticals})
        first = refine_morphism(fwd, grid)
        second = refine_morphism(shift_of_morphism(bwd, eps), grid)
        if second.source != first.target:
            raise ValueError("grid incompatibility between the two cross maps")
        return morphism_compose(first, second) == refine_morphism(
            shift_map(base, 2 * eps), grid)

    return (composite_matches(il.fwd, il.bwd, v)
            and composite_matches(il.bwd, il.fwd, w))


def _generator_ok(src_iv: DecoratedInterval, tgt_iv: DecoratedInterval) -> bool:
    """Whether the coefficient-1 generator map src -> tgt is natural and nonzero."""
    return (tgt_iv.left_cut <= src_iv.left_cut
            and tgt_iv.right_cut <= src_iv.right_cut
            and src_iv.left_cut < tgt_iv.right_cut)


def _diagram_summands(dgm: Diagram, dec: Decomposition) -> list[int]:
    """Summand index for each expanded diagram point, in expansion order."""
    groups: dict[DiagramPoint, list[int]] = {}
    for idx, iv in enumerate(dec.intervals):
        if not iv.is_singleton():
            groups.setdefault(interval_to_point(iv.interior()), []).append(idx)
    out = []
    for pt, mult in dgm:
        out.extend(groups[pt][:mult])
    return out


def _covers(iv: DecoratedInterval, criticals, k: int) -> bool:
    piece = piece_interval(criticals, k)
    return (iv.left_cut <= piece.left_cut) and (piece.right_cut <= iv.right_cut)


def _cross_map(v: GridModule, w: GridModule, dv: Decomposition, dw: Decomposition,
               bar_pairs, eps: Fraction) -> Morphism:
    grid = sorted(set(v.criticals) | {c - eps for c in w.criticals})
    into_v = refine_morphism(dv.iso, grid)
    into_w = refine_morphism(shift_of_morphism(dw.iso, eps), grid)
    src_sum, tgt_sum = into_v.source, into_w.source

    shifted = [shift_interval(iv, eps) for iv in dw.intervals]
    ok_pairs = {(a, b) for a, b in bar_pairs if _generator_ok(dv.intervals[a], shifted[b])}
    comps = []
    for k in range(src_sum.n_pieces):
        v_alive = [a for a, iv in enumerate(dv.intervals)
                   if _covers(iv, src_sum.criticals, k)]
        w_alive = [b for b, iv in enumerate(shifted)
                   if _covers(iv, src_sum.criticals, k)]
        v_pos = {a: idx for idx, a in enumerate(v_alive)}
        w_pos = {b: idx for idx, b in enumerate(w_alive)}
        ent = [0] * (len(w_alive) * len(v_alive))
        for a, b in ok_pairs:
            if a in v_pos and b in w_pos:
                ent[w_pos[b] * len(v_alive) + v_pos[a]] = 1
        comps.append(Mat(len(w_alive), len(v_alive), tuple(ent), v.field))
    block = Morphism(src_sum, tgt_sum, tuple(comps))
    return morphism_compose(morphism_compose(morphism_invert(into_v), block), into_w)


def build_interleaving(v: GridModule, w: GridModule, m: Matching, eps) -> Interleaving:
    """Summand-wise interleaving along a matching of the two diagrams.

    Matched bars exchange generator-to-generator maps wherever the shifted
    supports overlap (and the decorated endpoints allow a natural map);
    unmatched bars map to zero.  Equal singleton bars are paired as well so
    that at eps = 0 identical modules receive the identity interleaving.
    """
    eps = Fraction(eps)
    if not m.cost <= eps:
        raise ValueError("build_interleaving needs eps >= matching cost")
    dv, dw = decompose(v), decompose(w)
    dgm_v, dgm_w = diagram(v), diagram(w)
    diag_v = _diagram_summands(dgm_v, dv)
    diag_w = _diagram_summands(dgm_w, dw)
    bar_pairs = [(diag_v[i], diag_w[j]) for i, j in m.pairs]

    singles_v: dict[DecoratedInterval, list[int]] = {}
    for idx, iv in enumerate(dv.intervals):
        if iv.is_singleton():
            singles_v.setdefault(iv, []).append(idx)
    for idx, iv in enumerate(dw.intervals):
        if iv.is_singleton() and singles_v.get(iv):
            bar_pairs.append((singles_v[iv].pop(0), idx))

    fwd = _cross_map(v, w, dv, dw, bar_pairs, eps)
    bwd = _cross_map(w, v, dw, dv, [(b, a) for a, b in bar_pairs], eps)
    return Interleaving(eps, fwd, bwd)


def interleaving_distance(v: GridModule, w: GridModule):
    """Interleaving distance, computed as the bottleneck distance of diagrams.

    For constructible modules the two distances agree.  A verified witness
    at exactly this value exists whenever the decorated endpoints of the
    optimally matched bars permit genuine maps (always the case for open
    bars); build_interleaving produces it.
    """
    if v.field != w.field:
        raise ValueError("interleaving_distance: field mismatch")
    return bottleneck(diagram(v), diagram(w))[0]
