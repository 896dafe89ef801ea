"""The observable layer: where singleton-supported information is ignored.

Ob-morphisms carry one component per *open* piece; behaviour at singletons
is derivable and never stored, because any two indices s < t admit an
intermediate point.  Compatibility therefore reduces to one equation per
singleton, against the skip map (the composite of the two structure maps
across the singleton).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .gfp import Mat, image_basis, inverse, kernel_basis, matmul, rank, solve
from .intervals import DecoratedInterval
from .modules import (
    GridModule,
    Morphism,
    cokernel,
    common_refinement,
    kernel,
    is_ephemeral,
    morphism_validate,
    piece_of,
    piece_rep,
    refine,
    structure_rank,
)


def skip_map(v: GridModule, i: int) -> Mat:
    """Composite structure map across singleton i, between its open neighbours."""
    return matmul(v.maps[2 * i + 1], v.maps[2 * i])


def bar(v: GridModule) -> GridModule:
    """Left-limit replacement: each singleton value becomes the value just left."""
    n = v.n_criticals
    dims = list(v.dims)
    maps = list(v.maps)
    for i in range(n):
        dims[2 * i + 1] = v.dims[2 * i]
        maps[2 * i] = Mat.identity(v.dims[2 * i], v.field)
        maps[2 * i + 1] = skip_map(v, i)
    return GridModule(v.field, v.criticals, tuple(dims), tuple(maps))


def underbar(v: GridModule) -> GridModule:
    """Right-limit replacement: each singleton value becomes the value just right."""
    n = v.n_criticals
    dims = list(v.dims)
    maps = list(v.maps)
    for i in range(n):
        dims[2 * i + 1] = v.dims[2 * i + 2]
        maps[2 * i] = skip_map(v, i)
        maps[2 * i + 1] = Mat.identity(v.dims[2 * i + 2], v.field)
    return GridModule(v.field, v.criticals, tuple(dims), tuple(maps))


def nat_n(v: GridModule) -> Morphism:
    """The natural weak isomorphism from bar(v) to v."""
    comps = list(Mat.identity(d, v.field) for d in v.dims)
    for i in range(v.n_criticals):
        comps[2 * i + 1] = v.maps[2 * i]
    return Morphism(bar(v), v, tuple(comps))


def nat_u(v: GridModule) -> Morphism:
    """The natural weak isomorphism from v to underbar(v)."""
    comps = list(Mat.identity(d, v.field) for d in v.dims)
    for i in range(v.n_criticals):
        comps[2 * i + 1] = v.maps[2 * i + 1]
    return Morphism(v, underbar(v), tuple(comps))


def radical(v: GridModule) -> GridModule:
    return _radical_pair(v)[0]


def radical_inclusion(v: GridModule) -> Morphism:
    return _radical_pair(v)[1]


def _radical_pair(v: GridModule) -> tuple[GridModule, Morphism]:
    """The submodule generated at each point by all strictly earlier images.

    On open pieces nothing changes; at a singleton the value shrinks to the
    image of the incoming map from the left.
    """
    bases = []
    for k in range(v.n_pieces):
        if k % 2 == 0:
            bases.append(Mat.identity(v.dims[k], v.field))
        else:
            bases.append(image_basis(v.maps[k - 1]).basis)
    dims = tuple(b.cols for b in bases)
    maps = []
    for k in range(v.n_pieces - 1):
        pushed = matmul(v.maps[k], bases[k])
        coords = solve(bases[k + 1], pushed)
        if coords is None:  # cannot happen: images are carried forward
            raise AssertionError("radical bases not preserved")
        maps.append(coords)
    rad = GridModule(v.field, v.criticals, dims, tuple(maps))
    return rad, Morphism(rad, v, tuple(bases))


# ---------------------------------------------------------------------------
# Ob-morphisms


@dataclass(frozen=True)
class ObMorphism:
    """A morphism defined only for strictly increasing index pairs.

    Stored as one matrix per open piece; the components at and across
    singletons are composites of these with structure maps.
    """

    source: GridModule
    target: GridModule
    open_comps: tuple[Mat, ...]

    def __post_init__(self):
        if self.source.criticals != self.target.criticals:
            raise ValueError("ob-morphism endpoints must share one grid")
        if self.source.field != self.target.field:
            raise ValueError("ob-morphism field mismatch")
        n = self.source.n_criticals
        if len(self.open_comps) != n + 1:
            raise ValueError("ob-morphism needs one component per open piece")
        for j, c in enumerate(self.open_comps):
            if c.cols != self.source.dims[2 * j] or c.rows != self.target.dims[2 * j]:
                raise ValueError(
                    f"ob component {j} has shape {c.rows}x{c.cols}, expected "
                    f"{self.target.dims[2 * j]}x{self.source.dims[2 * j]}"
                )


def ob_validate(f: ObMorphism) -> bool:
    """Skip-map compatibility at every singleton."""
    for i in range(f.source.n_criticals):
        lhs = matmul(f.open_comps[i + 1], skip_map(f.source, i))
        rhs = matmul(skip_map(f.target, i), f.open_comps[i])
        if lhs != rhs:
            return False
    return True


def ob_identity(v: GridModule) -> ObMorphism:
    comps = tuple(Mat.identity(v.dims[2 * j], v.field)
                  for j in range(v.n_criticals + 1))
    return ObMorphism(v, v, comps)


def ob_zero(v: GridModule, w: GridModule) -> ObMorphism:
    comps = tuple(Mat.zeros(w.dims[2 * j], v.dims[2 * j], v.field)
                  for j in range(v.n_criticals + 1))
    return ObMorphism(v, w, comps)


def project(f: Morphism) -> ObMorphism:
    """Forget the singleton components of a genuine morphism."""
    if not morphism_validate(f):
        raise ValueError("cannot project an invalid morphism")
    comps = tuple(f.comps[2 * j] for j in range(f.source.n_criticals + 1))
    return ObMorphism(f.source, f.target, comps)


def ob_refine(f: ObMorphism, extra: Iterable[Fraction]) -> ObMorphism:
    src = refine(f.source, extra)
    if src.criticals == f.source.criticals:
        return f
    tgt = refine(f.target, extra)
    comps = []
    for j in range(src.n_criticals + 1):
        old_piece = piece_of(f.source.criticals, piece_rep(src.criticals, 2 * j))
        comps.append(f.open_comps[old_piece // 2])
    return ObMorphism(src, tgt, tuple(comps))


def ob_compose(g: ObMorphism, f: ObMorphism) -> ObMorphism:
    """The composite g after f, refining to a common grid first."""
    crit = set(f.source.criticals) | set(g.source.criticals)
    f = ob_refine(f, crit)
    g = ob_refine(g, crit)
    if f.target != g.source:
        raise ValueError("ob_compose: middle modules disagree")
    comps = tuple(matmul(g.open_comps[j], f.open_comps[j])
                  for j in range(len(f.open_comps)))
    return ObMorphism(f.source, g.target, comps)


def ob_equal(f: ObMorphism, g: ObMorphism) -> bool:
    """Equality after refining both to a common grid."""
    crit = set(f.source.criticals) | set(g.source.criticals)
    return ob_refine(f, crit) == ob_refine(g, crit)


def is_weak_iso(f: Morphism) -> bool:
    """Kernel and cokernel both ephemeral."""
    if not morphism_validate(f):
        raise ValueError("is_weak_iso needs a valid morphism")
    return is_ephemeral(kernel(f)) and is_ephemeral(cokernel(f))


def ob_invert(f: ObMorphism) -> ObMorphism:
    """Componentwise inverse; defined exactly when f is an ob-isomorphism."""
    comps = []
    for c in f.open_comps:
        if c.rows != c.cols or rank(c) != c.rows:
            raise ValueError("not an ob-isomorphism: open component not invertible")
        comps.append(inverse(c))
    return ObMorphism(f.target, f.source, tuple(comps))


def bar_morphism(f: ObMorphism | Morphism) -> Morphism:
    """The genuine morphism bar(source) -> bar(target) induced by f."""
    if isinstance(f, Morphism):
        f = project(f)
    src, tgt = bar(f.source), bar(f.target)
    comps = []
    for k in range(src.n_pieces):
        j = k // 2 if k % 2 == 0 else (k - 1) // 2  # singletons copy the left piece
        comps.append(f.open_comps[j])
    return Morphism(src, tgt, tuple(comps))


def underbar_morphism(f: ObMorphism | Morphism) -> Morphism:
    """The genuine morphism underbar(source) -> underbar(target) induced by f."""
    if isinstance(f, Morphism):
        f = project(f)
    src, tgt = underbar(f.source), underbar(f.target)
    comps = []
    for k in range(src.n_pieces):
        j = k // 2 if k % 2 == 0 else (k + 1) // 2  # singletons copy the right piece
        comps.append(f.open_comps[j])
    return Morphism(src, tgt, tuple(comps))


def ob_hom_dim(i: DecoratedInterval, j: DecoratedInterval) -> int:
    """Dimension (0 or 1) of the ob-morphism space between interval modules.

    Nonzero exactly when inf(j) <= inf(i) < sup(j) <= sup(i), comparing
    undecorated endpoints with infinities.
    """
    if i.is_singleton() or j.is_singleton():
        raise ValueError("ob_hom_dim is for non-singleton intervals")

    def lo(iv):
        return (0,) if iv.left is None else (1, iv.left)

    def hi(iv):
        return (2,) if iv.right is None else (1, iv.right)

    return 1 if lo(j) <= lo(i) < hi(j) <= hi(i) else 0


def ob_morphism_space_dim(v: GridModule, w: GridModule) -> int:
    """Dimension of the space of valid ob-morphisms v -> w."""
    if v.criticals != w.criticals:
        v, w = common_refinement(v, w)
    fld = v.field
    p = fld.characteristic
    n = v.n_criticals
    offsets = [0]
    for j in range(n + 1):
        offsets.append(offsets[-1] + w.dims[2 * j] * v.dims[2 * j])
    nvars = offsets[-1]
    rows = []
    for i in range(n):
        vskip, wskip = skip_map(v, i), skip_map(w, i)
        dv_l, dv_r = v.dims[2 * i], v.dims[2 * i + 2]
        dw_l, dw_r = w.dims[2 * i], w.dims[2 * i + 2]
        for r in range(dw_r):
            for c in range(dv_l):
                row = [0] * nvars
                for m in range(dv_r):
                    row[offsets[i + 1] + r * dv_r + m] = vskip.at(m, c)
                for m in range(dw_l):
                    row[offsets[i] + m * dv_l + c] = (
                        row[offsets[i] + m * dv_l + c] - wskip.at(r, m)
                    ) % p
                rows.append(row)
    constraints = Mat.from_rows(rows, fld, cols=nvars)
    return kernel_basis(constraints).dim


# ---------------------------------------------------------------------------
# Limiting ranks


@dataclass(frozen=True)
class LimitingRanks:
    """The four limit-to-limit ranks at a pair s < t.

    They always satisfy closed_closed <= {closed_open, open_closed, strict}
    <= open_open; see limiting_ranks.
    """

    closed_closed: int
    closed_open: int
    open_closed: int
    open_open: int


def limiting_ranks(v: GridModule, s: Fraction, t: Fraction) -> LimitingRanks:
    """Ranks between the left/right limits at s and t (auto-refining the grid)."""
    s, t = Fraction(s), Fraction(t)
    if s >= t:
        raise ValueError("limiting_ranks requires s < t")
    vr = refine(v, (s, t))
    i = (piece_of(vr.criticals, s) - 1) // 2
    j = (piece_of(vr.criticals, t) - 1) // 2
    left_s, right_s = 2 * i, 2 * i + 2
    left_t, right_t = 2 * j, 2 * j + 2
    return LimitingRanks(
        closed_closed=structure_rank(vr, left_s, right_t),
        closed_open=structure_rank(vr, left_s, left_t),
        open_closed=structure_rank(vr, right_s, right_t),
        open_open=structure_rank(vr, right_s, left_t),
    )


def strict_rank(v: GridModule, s: Fraction, t: Fraction) -> int:
    """Rank of the structure map from the point s to the point t."""
    s, t = Fraction(s), Fraction(t)
    if s >= t:
        raise ValueError("strict_rank requires s < t")
    vr = refine(v, (s, t))
    return structure_rank(vr, piece_of(vr.criticals, s), piece_of(vr.criticals, t))


def is_qtame(v: GridModule) -> bool:
    """Finite limiting ranks everywhere: vacuously true on this finite model."""
    return True
