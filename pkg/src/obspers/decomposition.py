"""Interval decomposition and barcodes of constructible modules.

Two independent routes to the barcode live here.  barcode_formula reads
multiplicities off rank differences (an inclusion-exclusion over the piece
grid).  decompose actually builds an isomorphism from a direct sum of
interval modules, by sweeping the pieces left to right while maintaining a
basis partitioned by birth piece: at every structure map the pushed basis
is column-reduced against older vectors, with the correction propagated
back through each bar's history so the change of basis puts the map in
exact partial-identity form.  Vectors whose image reduces to zero close
their bar; non-pivot coordinates open new bars.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .gfp import mat_from_cols
from .intervals import DecoratedInterval
from .modules import (
    GridModule,
    Morphism,
    direct_sum,
    interval_module,
    piece_range_interval,
    rank_table,
)


@dataclass(frozen=True)
class Barcode:
    """A canonically sorted multiset of decorated intervals."""

    items: tuple[tuple[DecoratedInterval, int], ...]

    def __post_init__(self):
        if any(mult <= 0 for _, mult in self.items):
            raise ValueError("barcode multiplicities must be positive")

    @staticmethod
    def from_intervals(intervals: Iterable[DecoratedInterval]) -> Barcode:
        counts = Counter(intervals)
        items = tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))
        return Barcode(items)

    def expand(self) -> list[DecoratedInterval]:
        return [iv for iv, mult in self.items for _ in range(mult)]

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return sum(mult for _, mult in self.items)

    def __str__(self) -> str:
        return "\n".join(f"{iv} x {mult}" for iv, mult in self.items)


def barcode_formula(v: GridModule) -> Barcode:
    """Barcode from rank differences over pieces; no basis computation."""
    table = rank_table(v)
    npc = v.n_pieces

    def rk(a: int, b: int) -> int:
        if a < 0 or b >= npc:
            return 0
        return table[a][b]

    intervals = []
    for a in range(npc):
        for b in range(a, npc):
            mult = rk(a, b) - rk(a - 1, b) - rk(a, b + 1) + rk(a - 1, b + 1)
            if mult:
                intervals.extend([piece_range_interval(v.criticals, a, b)] * mult)
    return Barcode.from_intervals(intervals)


class _Bar:
    __slots__ = ("birth", "death", "vecs")

    def __init__(self, birth: int, first_vec: list[int]):
        self.birth = birth
        self.death: int | None = None
        self.vecs: dict[int, list[int]] = {birth: first_vec}


def _unit(r: int, dim: int) -> list[int]:
    vec = [0] * dim
    vec[r] = 1
    return vec


@dataclass(frozen=True)
class Decomposition:
    """A barcode together with an explicit isomorphism realizing it.

    iso maps the direct sum of the interval modules (in summand order
    `intervals`) onto the decomposed module; every component is invertible.
    """

    barcode: Barcode
    intervals: tuple[DecoratedInterval, ...]
    iso: Morphism


def decompose(v: GridModule) -> Decomposition:
    p = v.field.characteristic
    inv = v.field.inv
    npc = v.n_pieces

    bars: list[_Bar] = []
    alive: list[int] = []
    for r in range(v.dims[0]):
        bars.append(_Bar(0, _unit(r, v.dims[0])))
        alive.append(r)

    for k in range(npc - 1):
        f = v.maps[k]
        frows = f.to_rows()
        pivot_of: dict[int, int] = {}
        survivors: list[int] = []
        for bid in alive:
            bar = bars[bid]
            vec = bar.vecs[k]
            w = [sum(row[c] * vec[c] for c in range(len(vec))) % p for row in frows]
            while True:
                piv = next((i for i, x in enumerate(w) if x), None)
                if piv is None or piv not in pivot_of:
                    break
                other = bars[pivot_of[piv]]
                c = (w[piv] * inv(other.vecs[k + 1][piv])) % p
                w = [(x - c * y) % p for x, y in zip(w, other.vecs[k + 1])]
                for m in range(bar.birth, k + 1):
                    bar.vecs[m] = [
                        (x - c * y) % p for x, y in zip(bar.vecs[m], other.vecs[m])
                    ]
            if piv is None:
                bar.death = k
            else:
                bar.vecs[k + 1] = w
                pivot_of[piv] = bid
                survivors.append(bid)
        for r in range(v.dims[k + 1]):
            if r not in pivot_of:
                bars.append(_Bar(k + 1, _unit(r, v.dims[k + 1])))
                survivors.append(len(bars) - 1)
        alive = survivors

    for bid in alive:
        bars[bid].death = npc - 1

    spans = [(piece_range_interval(v.criticals, bar.birth, bar.death), bid)
             for bid, bar in enumerate(bars)]
    spans.sort(key=lambda si: (si[0].sort_key(), si[1]))
    intervals = tuple(iv for iv, _ in spans)

    summands = [interval_module(v.field, iv, v.criticals) for iv in intervals]
    source = direct_sum(summands, field=v.field, criticals=v.criticals)
    comps = []
    for k in range(npc):
        cols = [bars[bid].vecs[k] for _, bid in spans
                if bars[bid].birth <= k <= bars[bid].death]
        comps.append(mat_from_cols(cols, v.dims[k], v.field))
    iso = Morphism(source, v, tuple(comps))
    return Decomposition(Barcode.from_intervals(intervals), intervals, iso)


def ob_barcode(v: GridModule) -> Barcode:
    """The observable barcode: interiors only, singletons discarded."""
    interiors = []
    for iv, mult in barcode_formula(v):
        interior = iv.interior()
        if interior is not None:
            interiors.extend([interior] * mult)
    return Barcode.from_intervals(interiors)
