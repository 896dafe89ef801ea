"""Constructible persistence modules over the real line.

A module with critical values c_0 < ... < c_{n-1} is constant on the 2n+1
pieces

    (-inf, c_0), {c_0}, (c_0, c_1), {c_1}, ..., {c_{n-1}}, (c_{n-1}, +inf)

indexed 0..2n: even indices are open pieces, odd indices singletons.  The
data is one vector space dimension per piece and one structure matrix per
adjacent pair of pieces; the structure map between two points of the same
piece is the identity.  All values are immutable and exact.
"""

from __future__ import annotations

import random
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .gfp import (
    FieldSpec,
    Mat,
    block_diag,
    image_basis,
    inverse,
    kernel_basis,
    mat_from_cols,
    matmul,
    rank,
    solve,
)
from .intervals import DecoratedInterval


@dataclass(frozen=True)
class GridModule:
    """A constructible persistence module presented on its critical grid."""

    field: FieldSpec
    criticals: tuple[Fraction, ...]
    dims: tuple[int, ...]
    maps: tuple[Mat, ...]

    def __post_init__(self):
        n = len(self.criticals)
        if any(self.criticals[i] >= self.criticals[i + 1] for i in range(n - 1)):
            raise ValueError("critical values must be strictly increasing")
        if len(self.dims) != 2 * n + 1:
            raise ValueError("dims length must be 2n+1 for n critical values")
        if any(d < 0 for d in self.dims):
            raise ValueError("piece dimensions must be nonnegative")
        if len(self.maps) != 2 * n:
            raise ValueError("maps length must be 2n for n critical values")
        for k, m in enumerate(self.maps):
            if m.field != self.field:
                raise ValueError("structure map field mismatch")
            if m.cols != self.dims[k] or m.rows != self.dims[k + 1]:
                raise ValueError(
                    f"structure map {k} has shape {m.rows}x{m.cols}, "
                    f"expected {self.dims[k + 1]}x{self.dims[k]}"
                )

    @property
    def n_criticals(self) -> int:
        return len(self.criticals)

    @property
    def n_pieces(self) -> int:
        return 2 * len(self.criticals) + 1


def zero_module(field: FieldSpec, criticals: Sequence[Fraction] = ()) -> GridModule:
    crit = tuple(Fraction(c) for c in criticals)
    n = len(crit)
    dims = (0,) * (2 * n + 1)
    maps = tuple(Mat.zeros(0, 0, field) for _ in range(2 * n))
    return GridModule(field, crit, dims, maps)


def piece_of(criticals: Sequence[Fraction], t: Fraction) -> int:
    """Index of the piece containing the point t."""
    t = Fraction(t)
    j = bisect_left(criticals, t)
    if j < len(criticals) and criticals[j] == t:
        return 2 * j + 1
    return 2 * j


def piece_interval(criticals: Sequence[Fraction], k: int) -> DecoratedInterval:
    n = len(criticals)
    if k % 2 == 1:
        c = criticals[(k - 1) // 2]
        return DecoratedInterval(c, True, c, True)
    j = k // 2
    left = None if j == 0 else criticals[j - 1]
    right = None if j == n else criticals[j]
    return DecoratedInterval(left, False, right, False)


def piece_rep(criticals: Sequence[Fraction], k: int) -> Fraction:
    """A representative point inside piece k."""
    n = len(criticals)
    if k % 2 == 1:
        return criticals[(k - 1) // 2]
    j = k // 2
    if n == 0:
        return Fraction(0)
    if j == 0:
        return criticals[0] - 1
    if j == n:
        return criticals[-1] + 1
    return (criticals[j - 1] + criticals[j]) / 2


def _interval_span(iv: DecoratedInterval, criticals: Sequence[Fraction]) -> tuple[int, int]:
    """First and last piece index covered by the interval (endpoints on grid)."""
    n = len(criticals)
    if iv.left is None:
        a = 0
    else:
        i = bisect_left(criticals, iv.left)
        if i == n or criticals[i] != iv.left:
            raise ValueError(f"interval endpoint {iv.left} not a critical value")
        a = 2 * i + 1 if iv.left_closed else 2 * i + 2
    if iv.right is None:
        b = 2 * n
    else:
        j = bisect_left(criticals, iv.right)
        if j == n or criticals[j] != iv.right:
            raise ValueError(f"interval endpoint {iv.right} not a critical value")
        b = 2 * j + 1 if iv.right_closed else 2 * j
    return a, b


def piece_range_interval(criticals: Sequence[Fraction], a: int, b: int) -> DecoratedInterval:
    """The decorated interval covering exactly pieces a..b."""
    n = len(criticals)
    if a == 0:
        left, lclosed = None, False
    elif a % 2 == 1:
        left, lclosed = criticals[(a - 1) // 2], True
    else:
        left, lclosed = criticals[a // 2 - 1], False
    if b == 2 * n:
        right, rclosed = None, False
    elif b % 2 == 1:
        right, rclosed = criticals[(b - 1) // 2], True
    else:
        right, rclosed = criticals[b // 2], False
    return DecoratedInterval(left, lclosed, right, rclosed)


def interval_module(field: FieldSpec, iv: DecoratedInterval,
                    criticals: Sequence[Fraction]) -> GridModule:
    """The module that is one-dimensional exactly on the interval."""
    crit = tuple(Fraction(c) for c in criticals)
    a, b = _interval_span(iv, crit)
    n = len(crit)
    dims = tuple(1 if a <= k <= b else 0 for k in range(2 * n + 1))
    maps = []
    one = Mat.from_rows([[1]], field)
    for k in range(2 * n):
        if a <= k and k + 1 <= b:
            maps.append(one)
        else:
            maps.append(Mat.zeros(dims[k + 1], dims[k], field))
    return GridModule(field, crit, dims, tuple(maps))


def evaluate_dim(v: GridModule, t: Fraction) -> int:
    return v.dims[piece_of(v.criticals, t)]


def composite_map(v: GridModule, frm: int, to: int) -> Mat:
    """The structure matrix from piece frm to piece to (frm <= to)."""
    if frm > to:
        raise ValueError("composite_map requires frm <= to")
    m = Mat.identity(v.dims[frm], v.field)
    for k in range(frm, to):
        m = matmul(v.maps[k], m)
    return m


def structure_rank(v: GridModule, frm: int, to: int) -> int:
    if frm > to:
        raise ValueError("structure_rank requires frm <= to")
    return rank(composite_map(v, frm, to))


def rank_table(v: GridModule) -> list[list[int]]:
    """All piece-to-piece ranks: table[a][b] = rank of piece a -> piece b."""
    npc = v.n_pieces
    table = [[0] * npc for _ in range(npc)]
    for a in range(npc):
        m = Mat.identity(v.dims[a], v.field)
        table[a][a] = v.dims[a]
        for b in range(a + 1, npc):
            m = matmul(v.maps[b - 1], m)
            table[a][b] = rank(m)
    return table


def is_ephemeral(v: GridModule) -> bool:
    """True iff the support lies in singleton pieces (all open dims zero)."""
    # With all open pieces zero, every map between distinct pieces factors
    # through a zero space, so the cross-piece condition is automatic.
    return all(v.dims[k] == 0 for k in range(0, v.n_pieces, 2))


def refine(v: GridModule, extra: Iterable[Fraction]) -> GridModule:
    """The same module presented on the grid enlarged by the given points."""
    new_crit = tuple(sorted(set(v.criticals) | {Fraction(c) for c in extra}))
    if new_crit == v.criticals:
        return v
    npc = 2 * len(new_crit) + 1
    old_of = [piece_of(v.criticals, piece_rep(new_crit, k)) for k in range(npc)]
    dims = tuple(v.dims[old_of[k]] for k in range(npc))
    maps = []
    for k in range(npc - 1):
        if old_of[k] == old_of[k + 1]:
            maps.append(Mat.identity(dims[k], v.field))
        else:
            maps.append(v.maps[old_of[k]])
    return GridModule(v.field, new_crit, dims, tuple(maps))


def common_refinement(*modules: GridModule) -> list[GridModule]:
    crit: set[Fraction] = set()
    for m in modules:
        crit |= set(m.criticals)
    return [refine(m, crit) for m in modules]


def direct_sum(summands: Sequence[GridModule], field: FieldSpec | None = None,
               criticals: Sequence[Fraction] = ()) -> GridModule:
    """Pointwise direct sum, on the common refinement of all grids."""
    if not summands:
        if field is None:
            raise ValueError("direct sum of nothing needs an explicit field")
        return zero_module(field, criticals)
    fld = summands[0].field
    if any(s.field != fld for s in summands):
        raise ValueError("direct sum field mismatch")
    crit = set(Fraction(c) for c in criticals)
    for s in summands:
        crit |= set(s.criticals)
    parts = [refine(s, crit) for s in summands]
    base = parts[0]
    dims = tuple(sum(p.dims[k] for p in parts) for k in range(base.n_pieces))
    maps = tuple(block_diag([p.maps[k] for p in parts], fld)
                 for k in range(base.n_pieces - 1))
    return GridModule(fld, base.criticals, dims, maps)


def random_module(seed: int, field: FieldSpec, n_criticals: int,
                  max_dim: int) -> GridModule:
    """Deterministic random module; fixed seed gives byte-identical output."""
    rng = random.Random(seed)
    pool = [Fraction(k, 2) for k in range(-12, 13)]
    criticals = tuple(sorted(rng.sample(pool, n_criticals)))
    return _random_on(rng, field, criticals, max_dim)


def random_module_on(seed: int, field: FieldSpec,
                     criticals: Sequence[Fraction], max_dim: int) -> GridModule:
    rng = random.Random(seed)
    return _random_on(rng, field, tuple(Fraction(c) for c in criticals), max_dim)


def _random_on(rng: random.Random, field: FieldSpec,
               criticals: tuple[Fraction, ...], max_dim: int) -> GridModule:
    p = field.characteristic
    n = len(criticals)
    dims = tuple(rng.randint(0, max_dim) for _ in range(2 * n + 1))
    maps = tuple(
        Mat(dims[k + 1], dims[k],
            tuple(rng.randrange(p) for _ in range(dims[k + 1] * dims[k])), field)
        for k in range(2 * n)
    )
    return GridModule(field, criticals, dims, maps)


# ---------------------------------------------------------------------------
# Morphisms (natural transformations in the strict category)


@dataclass(frozen=True)
class Morphism:
    """A pointwise linear map between modules on a common grid."""

    source: GridModule
    target: GridModule
    comps: tuple[Mat, ...]

    def __post_init__(self):
        if self.source.criticals != self.target.criticals:
            raise ValueError("morphism endpoints must share one grid")
        if self.source.field != self.target.field:
            raise ValueError("morphism field mismatch")
        if len(self.comps) != self.source.n_pieces:
            raise ValueError("morphism needs one component per piece")
        for k, c in enumerate(self.comps):
            if c.cols != self.source.dims[k] or c.rows != self.target.dims[k]:
                raise ValueError(
                    f"morphism component {k} has shape {c.rows}x{c.cols}, expected "
                    f"{self.target.dims[k]}x{self.source.dims[k]}"
                )


def identity_morphism(v: GridModule) -> Morphism:
    comps = tuple(Mat.identity(d, v.field) for d in v.dims)
    return Morphism(v, v, comps)


def zero_morphism(v: GridModule, w: GridModule) -> Morphism:
    comps = tuple(Mat.zeros(w.dims[k], v.dims[k], v.field)
                  for k in range(v.n_pieces))
    return Morphism(v, w, comps)


def morphism_validate(f: Morphism) -> bool:
    """Naturality: target map after component equals component after source map."""
    for k in range(f.source.n_pieces - 1):
        lhs = matmul(f.comps[k + 1], f.source.maps[k])
        rhs = matmul(f.target.maps[k], f.comps[k])
        if lhs != rhs:
            return False
    return True


def morphism_compose(f: Morphism, g: Morphism) -> Morphism:
    """The composite g after f (requires g.source == f.target)."""
    if g.source != f.target:
        raise ValueError("morphism_compose: middle modules disagree")
    comps = tuple(matmul(g.comps[k], f.comps[k]) for k in range(len(f.comps)))
    return Morphism(f.source, g.target, comps)


def morphism_invert(f: Morphism) -> Morphism:
    """Pointwise inverse of a strict isomorphism."""
    comps = tuple(inverse(c) for c in f.comps)
    return Morphism(f.target, f.source, comps)


def refine_morphism(f: Morphism, extra: Iterable[Fraction]) -> Morphism:
    src = refine(f.source, extra)
    if src.criticals == f.source.criticals:
        return f
    tgt = refine(f.target, extra)
    old_of = [piece_of(f.source.criticals, piece_rep(src.criticals, k))
              for k in range(src.n_pieces)]
    comps = tuple(f.comps[old_of[k]] for k in range(src.n_pieces))
    return Morphism(src, tgt, comps)


def kernel(f: Morphism) -> GridModule:
    return _kernel_pair(f)[0]


def kernel_inclusion(f: Morphism) -> Morphism:
    return _kernel_pair(f)[1]


def _kernel_pair(f: Morphism) -> tuple[GridModule, Morphism]:
    v = f.source
    bases = [kernel_basis(c).basis for c in f.comps]
    return _submodule_from_bases(v, bases)


def image(f: Morphism) -> GridModule:
    return _image_pair(f)[0]


def image_inclusion(f: Morphism) -> Morphism:
    return _image_pair(f)[1]


def _image_pair(f: Morphism) -> tuple[GridModule, Morphism]:
    w = f.target
    bases = [image_basis(c).basis for c in f.comps]
    return _submodule_from_bases(w, bases)


def _submodule_from_bases(v: GridModule, bases: list[Mat]) -> tuple[GridModule, Morphism]:
    """Module structure on pointwise subspaces that the maps preserve."""
    dims = tuple(b.cols for b in bases)
    maps = []
    for k in range(v.n_pieces - 1):
        pushed = matmul(v.maps[k], bases[k])
        coords = solve(bases[k + 1], pushed)
        if coords is None:
            raise ValueError("bases do not define a submodule")
        maps.append(coords)
    sub = GridModule(v.field, v.criticals, dims, tuple(maps))
    incl = Morphism(sub, v, tuple(bases))
    return sub, incl


def cokernel(f: Morphism) -> GridModule:
    return _cokernel_pair(f)[0]


def cokernel_projection(f: Morphism) -> Morphism:
    return _cokernel_pair(f)[1]


def _cokernel_pair(f: Morphism) -> tuple[GridModule, Morphism]:
    """Quotient by the pointwise image, using pivot-row complements.

    The canonical image basis has identity rows at its pivot positions, so
    the non-pivot coordinates of w - B.w[pivots] give a deterministic
    representative of each class.
    """
    w = f.target
    fld = w.field
    p = fld.characteristic
    projections: list[Mat] = []
    sections: list[Mat] = []
    for k in range(w.n_pieces):
        amb = w.dims[k]
        basis = image_basis(f.comps[k]).basis
        pivot_rows = []
        for j in range(basis.cols):
            col = basis.col(j)
            pivot_rows.append(next(i for i in range(amb) if col[i]))
        pivot_set = set(pivot_rows)
        compl = [i for i in range(amb) if i not in pivot_set]
        proj_rows = []
        for r in compl:
            row = [0] * amb
            row[r] = 1
            for idx, pr in enumerate(pivot_rows):
                row[pr] = (row[pr] - basis.at(r, idx)) % p
            proj_rows.append(row)
        projections.append(Mat.from_rows(proj_rows, fld, cols=amb))
        sections.append(mat_from_cols([[1 if i == r else 0 for i in range(amb)]
                                       for r in compl], amb, fld))
    dims = tuple(q.rows for q in projections)
    maps = tuple(
        matmul(projections[k + 1], matmul(w.maps[k], sections[k]))
        for k in range(w.n_pieces - 1)
    )
    quot = GridModule(fld, w.criticals, dims, maps)
    proj = Morphism(w, quot, tuple(projections))
    return quot, proj


# ---------------------------------------------------------------------------
# The space of morphisms as a linear system


def morphism_space_basis(v: GridModule, w: GridModule) -> list[Morphism]:
    """A basis of Hom(v, w), from the kernel of the naturality constraints."""
    if v.criticals != w.criticals:
        v, w = common_refinement(v, w)
    fld = v.field
    npc = v.n_pieces
    offsets = [0]
    for k in range(npc):
        offsets.append(offsets[-1] + w.dims[k] * v.dims[k])
    nvars = offsets[-1]
    rows = []
    p = fld.characteristic
    for k in range(npc - 1):
        rho, sigma = v.maps[k], w.maps[k]
        for r in range(w.dims[k + 1]):
            for c in range(v.dims[k]):
                row = [0] * nvars
                for m in range(v.dims[k + 1]):
                    row[offsets[k + 1] + r * v.dims[k + 1] + m] = rho.at(m, c)
                for m in range(w.dims[k]):
                    row[offsets[k] + m * v.dims[k] + c] = (
                        row[offsets[k] + m * v.dims[k] + c] - sigma.at(r, m)
                    ) % p
                rows.append(row)
    constraints = Mat.from_rows(rows, fld, cols=nvars)
    ker = kernel_basis(constraints)
    out = []
    for j in range(ker.dim):
        vec = ker.basis.col(j)
        comps = []
        for k in range(npc):
            ent = vec[offsets[k]:offsets[k + 1]]
            comps.append(Mat(w.dims[k], v.dims[k], tuple(ent), fld))
        out.append(Morphism(v, w, tuple(comps)))
    return out


def morphism_space_dim(v: GridModule, w: GridModule) -> int:
    return len(morphism_space_basis(v, w))


def random_morphism(v: GridModule, w: GridModule, seed: int) -> Morphism:
    """A random natural map, as a random combination of a Hom-space basis."""
    rng = random.Random(seed)
    basis = morphism_space_basis(v, w)
    if v.criticals != w.criticals:
        v, w = common_refinement(v, w)
    if not basis:
        return zero_morphism(v, w)
    p = v.field.characteristic
    coeffs = [rng.randrange(p) for _ in basis]
    comps = []
    for k in range(v.n_pieces):
        ent = [0] * (w.dims[k] * v.dims[k])
        for c, f in zip(coeffs, basis):
            if c:
                ent = [(e + c * x) % p for e, x in zip(ent, f.comps[k].entries)]
        comps.append(Mat(w.dims[k], v.dims[k], tuple(ent), v.field))
    return Morphism(v, w, tuple(comps))
