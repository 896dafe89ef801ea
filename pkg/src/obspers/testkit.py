"""Brute-force oracles and structured random generators for the test suites.

The oracles deliberately avoid the production code paths: bottleneck by
exhaustive enumeration of partial matchings, rectangle multiplicities
through kernel/image subspace lattices instead of composite pivot counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .gfp import (
    FieldSpec,
    Mat,
    full_subspace,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    matmul,
    rank,
    subspace_from_spanning,
    subspace_intersect,
    vstack,
    zero_subspace,
)
from .diagrams import Diagram, DiagramPoint, NEG_INF, POS_INF
from .distances import matching_cost
from .modules import (
    GridModule,
    Morphism,
    _submodule_from_bases,
    composite_map,
    identity_morphism,
    image_inclusion,
    random_module_on,
    random_morphism,
)


@dataclass(frozen=True)
class OracleReport:
    """Aggregate result of a seeded suite: passing runs have no mismatches."""

    cases: int
    mismatches: tuple[tuple[int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_seeds(seeds: Iterable[int], check: Callable[[int], str | None]) -> OracleReport:
    """Run a per-seed check returning None on success, a description on failure."""
    mismatches = []
    count = 0
    for seed in seeds:
        count += 1
        message = check(seed)
        if message is not None:
            mismatches.append((seed, message))
    return OracleReport(count, tuple(mismatches))


def brute_bottleneck(d1: Diagram, d2: Diagram):
    """Minimum cost over every partial matching; inputs capped at 7 points."""
    pts1, pts2 = d1.expand(), d2.expand()
    if len(pts1) + len(pts2) > 7:
        raise ValueError("brute_bottleneck limited to 7 points total")
    best = None

    def rec(i: int, used: list[int], pairs: list[tuple[int, int]]):
        nonlocal best
        if i == len(pts1):
            unmatched1 = [a for a in range(len(pts1))
                          if all(a != x for x, _ in pairs)]
            unmatched2 = [b for b in range(len(pts2)) if b not in used]
            cost = matching_cost(pts1, pts2, pairs, unmatched1, unmatched2)
            if best is None or cost < best:
                best = cost
            return
        rec(i + 1, used, pairs)
        for b in range(len(pts2)):
            if b not in used:
                rec(i + 1, used + [b], pairs + [(i, b)])

    rec(0, [], [])
    return best


def brute_multiplicity(v: GridModule, a: int | None, b: int, c: int,
                       d: int | None) -> int:
    """Full-through count over pieces a < b <= c < d via subspace lattices.

    a = None stands for the vanishing space at -infinity, d = None at
    +infinity.  Everything is computed inside the space at piece b from
    kernels, images and intersections; no composite ranks are taken.
    """
    if not ((a is None or a <= b) and b <= c and (d is None or c <= d)):
        raise ValueError("pieces must be ordered")
    fld = v.field
    dim_b = v.dims[b]
    ker_g = kernel_basis(composite_map(v, b, c))
    ker_hg = (full_subspace(dim_b, fld) if d is None
              else kernel_basis(composite_map(v, b, d)))
    im_f = (zero_subspace(dim_b, fld) if a is None
            else image_basis(composite_map(v, a, b)))
    return (ker_hg.dim - ker_g.dim
            - subspace_intersect(ker_hg, im_f).dim
            + subspace_intersect(ker_g, im_f).dim)


def jitter_weak_iso(v: GridModule, seed: int) -> tuple[GridModule, Morphism]:
    """A module differing from v only at singletons, with its weak isomorphism.

    Growing mode returns f: v -> w (singleton spaces enlarged); shrinking
    mode returns f: w -> v (singleton spaces shrunk towards the incoming
    image). Either way kernel and cokernel live at singletons only.
    """
    rng = random.Random(seed)
    n = v.n_criticals
    if n == 0:
        return v, identity_morphism(v)
    p = v.field.characteristic
    if rng.random() < 0.5:
        dims = list(v.dims)
        maps = list(v.maps)
        comps = [Mat.identity(d, v.field) for d in v.dims]
        for i in range(n):
            k = 2 * i + 1
            extra = rng.randint(0, 2)
            if not extra:
                continue
            old = dims[k]
            dims[k] = old + extra
            maps[k - 1] = vstack([maps[k - 1], Mat.zeros(extra, v.dims[k - 1], v.field)])
            spill = Mat(v.dims[k + 1], extra,
                        tuple(rng.randrange(p)
                              for _ in range(v.dims[k + 1] * extra)), v.field)
            maps[k] = hstack([maps[k], spill])
            comps[k] = vstack([Mat.identity(old, v.field),
                               Mat.zeros(extra, old, v.field)])
        w = GridModule(v.field, v.criticals, tuple(dims), tuple(maps))
        return w, Morphism(v, w, tuple(comps))
    bases = []
    for k in range(v.n_pieces):
        if k % 2 == 0:
            bases.append(Mat.identity(v.dims[k], v.field))
            continue
        spanning = [list(col) for col in
                    (image_basis(v.maps[k - 1]).basis.col(j)
                     for j in range(image_basis(v.maps[k - 1]).dim))]
        for _ in range(rng.randint(0, 2)):
            spanning.append([rng.randrange(p) for _ in range(v.dims[k])])
        bases.append(subspace_from_spanning(v.dims[k], spanning, v.field).basis)
    w, incl = _submodule_from_bases(v, bases)
    return w, incl


def conjugate_random_iso(v: GridModule, seed: int) -> tuple[GridModule, Morphism]:
    """A strict isomorph of v by random invertible changes of basis per piece."""
    rng = random.Random(seed)
    p = v.field.characteristic

    def invertible(dim: int) -> Mat:
        while True:
            m = Mat(dim, dim, tuple(rng.randrange(p) for _ in range(dim * dim)),
                    v.field)
            if rank(m) == dim:
                return m

    change = [invertible(d) for d in v.dims]
    maps = tuple(matmul(change[k + 1], matmul(v.maps[k], inverse(change[k])))
                 for k in range(v.n_pieces - 1))
    w = GridModule(v.field, v.criticals, v.dims, maps)
    return w, Morphism(v, w, tuple(change))


def random_submodule_inclusion(v: GridModule, seed: int) -> Morphism:
    """The inclusion of the image of a random morphism into v."""
    rng = random.Random(seed)
    u = random_module_on(rng.randrange(2 ** 30), v.field, v.criticals,
                         max(v.dims, default=1) or 1)
    f = random_morphism(u, v, rng.randrange(2 ** 30))
    return image_inclusion(f)


def random_ephemeral(seed: int, field: FieldSpec,
                     criticals: Sequence[Fraction], max_dim: int) -> GridModule:
    """A random module supported on singleton pieces only."""
    rng = random.Random(seed)
    crit = tuple(Fraction(c) for c in criticals)
    n = len(crit)
    dims = tuple(rng.randint(0, max_dim) if k % 2 == 1 else 0
                 for k in range(2 * n + 1))
    maps = tuple(Mat.zeros(dims[k + 1], dims[k], field) for k in range(2 * n))
    return GridModule(field, crit, dims, maps)


def random_diagram(seed: int, max_points: int, allow_infinite: bool = True) -> Diagram:
    """A small random diagram with quarter-integer coordinates."""
    rng = random.Random(seed)
    points = []
    for _ in range(rng.randint(0, max_points)):
        style = rng.random()
        if allow_infinite and style < 0.12:
            points.append(DiagramPoint(NEG_INF, Fraction(rng.randint(-8, 8), 4)))
        elif allow_infinite and style < 0.24:
            points.append(DiagramPoint(Fraction(rng.randint(-8, 8), 4), POS_INF))
        elif allow_infinite and style < 0.28:
            points.append(DiagramPoint(NEG_INF, POS_INF))
        else:
            p = Fraction(rng.randint(-12, 10), 4)
            q = p + Fraction(rng.randint(1, 10), 4)
            points.append(DiagramPoint(p, q))
    return Diagram.from_points(points)
