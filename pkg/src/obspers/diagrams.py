"""Persistence measures, undecorated diagrams, observable isomorphism.

Points live in the extended open half-plane: pairs p < q with p possibly
-infinity and q possibly +infinity.  Infinities are carried as the float
infinities; every finite coordinate is an exact Fraction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .gfp import Mat
from .intervals import DecoratedInterval, format_exact, parse_exact
from .modules import (
    GridModule,
    _interval_span,
    common_refinement,
    piece_of,
    rank_table,
    structure_rank,
)
from .decomposition import Decomposition, decompose
from .observable import ObMorphism, ob_compose, ob_invert, project

NEG_INF = float("-inf")
POS_INF = float("inf")

ExtReal = "Fraction | float"  # floats appear only as the two infinities


def _ext_key(x) -> tuple:
    if x == NEG_INF:
        return (0,)
    if x == POS_INF:
        return (2,)
    return (1, x)


def format_ext(x) -> str:
    if x == NEG_INF:
        return "-inf"
    if x == POS_INF:
        return "+inf"
    return format_exact(x)


def parse_ext(text: str):
    text = text.strip()
    if text in ("-inf", "-oo"):
        return NEG_INF
    if text in ("+inf", "inf", "+oo"):
        return POS_INF
    return parse_exact(text)


@dataclass(frozen=True)
class DiagramPoint:
    """A point of the extended open half-plane."""

    p: object
    q: object

    def __post_init__(self):
        if self.p == POS_INF or self.q == NEG_INF:
            raise ValueError("diagram point outside the half-plane")
        if not self.p < self.q:
            raise ValueError("diagram point needs p < q")

    def sort_key(self) -> tuple:
        return (_ext_key(self.p), _ext_key(self.q))


@dataclass(frozen=True)
class Diagram:
    """A finite multiset of half-plane points, canonically sorted."""

    points: tuple[tuple[DiagramPoint, int], ...]

    def __post_init__(self):
        if any(mult <= 0 for _, mult in self.points):
            raise ValueError("diagram multiplicities must be positive")

    @staticmethod
    def from_points(points: Iterable[DiagramPoint]) -> Diagram:
        counts = Counter(points)
        items = tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))
        return Diagram(items)

    def expand(self) -> list[DiagramPoint]:
        return [pt for pt, mult in self.points for _ in range(mult)]

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return sum(mult for _, mult in self.points)


def interval_to_point(iv: DecoratedInterval) -> DiagramPoint:
    """The endpoint pair of a non-singleton interval, with infinities."""
    p = NEG_INF if iv.left is None else iv.left
    q = POS_INF if iv.right is None else iv.right
    return DiagramPoint(p, q)


@dataclass(frozen=True)
class Rectangle:
    """[a,b] x [c,d] with a < b < c < d; a may be -inf and d +inf."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        if self.a == POS_INF or self.d == NEG_INF:
            raise ValueError("rectangle corners out of range")
        for name in ("b", "c"):
            val = getattr(self, name)
            if val in (NEG_INF, POS_INF):
                raise ValueError("inner rectangle corners must be finite")
        if not (self.a < self.b < self.c < self.d):
            raise ValueError("rectangle needs a < b < c < d")


def measure(v: GridModule, r: Rectangle) -> int:
    """Count of full-through bars over the rectangle, by rank differences."""
    crit = set(v.criticals)
    for corner in (r.a, r.b, r.c, r.d):
        if isinstance(corner, Fraction) and corner in crit:
            raise ValueError(
                f"rectangle corner {corner} equals a critical value; perturb it"
            )

    def rk(x, y) -> int:
        if x == NEG_INF or y == POS_INF:
            return 0  # the module vanishes at the infinities
        return structure_rank(v, piece_of(v.criticals, x), piece_of(v.criticals, y))

    return rk(r.b, r.c) - rk(r.a, r.c) - rk(r.b, r.d) + rk(r.a, r.d)


def diagram(v: GridModule) -> Diagram:
    """The undecorated diagram: limiting rectangle multiplicities.

    On a constructible module the minimum over shrinking rectangles
    stabilizes at piece granularity, so each candidate point (p, q) with
    p in {-inf} + criticals and q in criticals + {+inf} gets the measure of
    the rectangle whose corners sit in the pieces flanking p and q.
    """
    table = rank_table(v)
    n = v.n_criticals
    npc = v.n_pieces

    def rk(a, b) -> int:
        if a is None or b is None:
            return 0
        return table[a][b]

    def flank(value_index: int | None, side: str) -> tuple:
        # piece indices (left_of, right_of) for a candidate coordinate
        if side == "p":
            if value_index is None:  # p = -inf
                return None, 0
            return 2 * value_index, 2 * value_index + 2
        if value_index is None:  # q = +inf
            return npc - 1, None
        return 2 * value_index, 2 * value_index + 2

    points = []
    p_candidates = [None] + list(range(n))
    q_candidates = list(range(n)) + [None]
    for pi in p_candidates:
        for qi in q_candidates:
            if pi is not None and qi is not None and pi >= qi:
                continue
            pa, pb = flank(pi, "p")
            pc, pd = flank(qi, "q")
            mult = rk(pb, pc) - rk(pa, pc) - rk(pb, pd) + rk(pa, pd)
            if mult:
                p_val = NEG_INF if pi is None else v.criticals[pi]
                q_val = POS_INF if qi is None else v.criticals[qi]
                points.extend([DiagramPoint(p_val, q_val)] * mult)
    return Diagram.from_points(points)


def diagram_equals(d1: Diagram, d2: Diagram) -> bool:
    return d1 == d2


def ob_isomorphic(v: GridModule, w: GridModule) -> bool:
    """Observable isomorphism test: equality of undecorated diagrams."""
    if v.field != w.field:
        raise ValueError("ob_isomorphic: field mismatch")
    return diagram(v) == diagram(w)


def ob_iso_witness(v: GridModule, w: GridModule) -> ObMorphism:
    """An explicit ob-isomorphism between modules with equal diagrams.

    Bars with the same interior are matched across the two decompositions
    and their generators mapped by 1; the witness is the conjugate of that
    block map by the two decomposition isomorphisms.
    """
    if not ob_isomorphic(v, w):
        raise ValueError("modules are not observably isomorphic")
    vr, wr = common_refinement(v, w)
    dv, dw = decompose(vr), decompose(wr)
    pairs = _match_by_interior(dv, dw)
    fld = vr.field
    comps = []
    for j in range(vr.n_criticals + 1):
        k = 2 * j
        v_alive = [i for i, iv in enumerate(dv.intervals) if _covers(iv, vr, k)]
        w_alive = [i for i, iv in enumerate(dw.intervals) if _covers(iv, wr, k)]
        v_pos = {summand: idx for idx, summand in enumerate(v_alive)}
        w_pos = {summand: idx for idx, summand in enumerate(w_alive)}
        ent = [0] * (len(w_alive) * len(v_alive))
        for iv_idx, iw_idx in pairs:
            if iv_idx in v_pos and iw_idx in w_pos:
                ent[w_pos[iw_idx] * len(v_alive) + v_pos[iv_idx]] = 1
        comps.append(Mat(len(w_alive), len(v_alive), tuple(ent), fld))
    block = ObMorphism(dv.iso.source, dw.iso.source, tuple(comps))
    return ob_compose(project(dw.iso), ob_compose(block, ob_invert(project(dv.iso))))


def _covers(iv: DecoratedInterval, v: GridModule, piece: int) -> bool:
    a, b = _interval_span(iv, v.criticals)
    return a <= piece <= b


def _match_by_interior(dv: Decomposition, dw: Decomposition) -> list[tuple[int, int]]:
    groups: dict[DecoratedInterval, list[int]] = {}
    for idx, iv in enumerate(dv.intervals):
        interior = iv.interior()
        if interior is not None:
            groups.setdefault(interior, []).append(idx)
    pairs = []
    used: dict[DecoratedInterval, int] = {}
    for idx, iv in enumerate(dw.intervals):
        interior = iv.interior()
        if interior is None:
            continue
        pos = used.get(interior, 0)
        pairs.append((groups[interior][pos], idx))
        used[interior] = pos + 1
    return pairs


def diagram_to_text(d: Diagram) -> str:
    """One line per point: `p q multiplicity`, canonically sorted."""
    lines = [f"{format_ext(pt.p)} {format_ext(pt.q)} {mult}" for pt, mult in d]
    return "\n".join(lines) + ("\n" if lines else "")


def diagram_from_text(text: str) -> Diagram:
    points = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"malformed diagram line: {line!r}")
        pt = DiagramPoint(parse_ext(parts[0]), parse_ext(parts[1]))
        points.extend([pt] * int(parts[2]))
    return Diagram.from_points(points)
