"""Exact dense linear algebra over prime fields GF(p).

Everything downstream (ranks, kernels, images, quotients) reduces to the
row-reduction routines in this module.  Matrices are immutable, row-major
tuples of small ints reduced mod p; all returned subspace bases are in a
canonical reduced echelon form so that equality of subspaces is equality
of dataclasses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p), determined by its characteristic."""

    characteristic: int

    def __post_init__(self):
        if not _is_prime(self.characteristic):
            raise ValueError(
                f"field characteristic must be prime, got {self.characteristic}"
            )

    def inv(self, a: int) -> int:
        a %= self.characteristic
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return pow(a, self.characteristic - 2, self.characteristic)


GF2 = FieldSpec(2)
GF5 = FieldSpec(5)


@dataclass(frozen=True)
class Mat:
    """Immutable dense matrix over GF(p), entries row-major in [0, p)."""

    rows: int
    cols: int
    entries: tuple[int, ...]
    field: FieldSpec

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("matrix entry count does not match rows*cols")
        p = self.field.characteristic
        if any(not (0 <= e < p) for e in self.entries):
            raise ValueError("matrix entry out of range [0, p)")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], field: FieldSpec,
                  cols: int | None = None) -> Mat:
        p = field.characteristic
        nrows = len(rows)
        if nrows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        else:
            ncols = 0 if cols is None else cols
        flat = tuple(int(x) % p for r in rows for x in r)
        return Mat(nrows, ncols, flat, field)

    @staticmethod
    def zeros(rows: int, cols: int, field: FieldSpec) -> Mat:
        return Mat(rows, cols, (0,) * (rows * cols), field)

    @staticmethod
    def identity(n: int, field: FieldSpec) -> Mat:
        ent = [0] * (n * n)
        for i in range(n):
            ent[i * n + i] = 1
        return Mat(n, n, tuple(ent), field)

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Mat.identity(self.rows, self.field)


def transpose(m: Mat) -> Mat:
    ent = tuple(m.at(i, j) for j in range(m.cols) for i in range(m.rows))
    return Mat(m.cols, m.rows, ent, m.field)


def mat_from_cols(cols: Sequence[Sequence[int]], ambient: int,
                  field: FieldSpec) -> Mat:
    return transpose(Mat.from_rows(cols, field, cols=ambient))


def hstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise ValueError("hstack of nothing")
    rows = mats[0].rows
    fld = mats[0].field
    if any(m.rows != rows or m.field != fld for m in mats):
        raise ValueError("hstack shape or field mismatch")
    out = []
    for i in range(rows):
        for m in mats:
            out.extend(m.row(i))
    return Mat(rows, sum(m.cols for m in mats), tuple(out), fld)


def vstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise ValueError("vstack of nothing")
    cols = mats[0].cols
    fld = mats[0].field
    if any(m.cols != cols or m.field != fld for m in mats):
        raise ValueError("vstack shape or field mismatch")
    ent = tuple(e for m in mats for e in m.entries)
    return Mat(sum(m.rows for m in mats), cols, ent, fld)


def block_diag(mats: Sequence[Mat], field: FieldSpec) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    ent = [0] * (rows * cols)
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            base = (r0 + i) * cols + c0
            ent[base:base + m.cols] = m.row(i)
        r0 += m.rows
        c0 += m.cols
    return Mat(rows, cols, tuple(ent), field)


def matmul(a: Mat, b: Mat) -> Mat:
    if a.field != b.field:
        raise ValueError("field mismatch in matmul")
    if a.cols != b.rows:
        raise ValueError(
            f"dimension mismatch in matmul: {a.rows}x{a.cols} by {b.rows}x{b.cols}"
        )
    p = a.field.characteristic
    bcols = [b.col(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        for bc in bcols:
            out.append(sum(x * y for x, y in zip(arow, bc)) % p)
    return Mat(a.rows, b.cols, tuple(out), a.field)


def _rref(m: Mat, pivot_cols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; pivots searched in the first pivot_cols columns."""
    p = m.field.characteristic
    rows = m.to_rows()
    limit = m.cols if pivot_cols is None else pivot_cols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        pr = next((i for i in range(r, m.rows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = m.field.inv(rows[r][c])
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return rows, pivots


def rank(m: Mat) -> int:
    _, pivots = _rref(m)
    return len(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(p)^ambient_dim with a canonical echelon basis."""

    ambient_dim: int
    basis: Mat  # columns are independent; canonical form via subspace_from_spanning

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise ValueError("subspace basis rows must equal ambient dimension")
        if rank(self.basis) != self.basis.cols:
            raise ValueError("subspace basis columns must be independent")

    @property
    def dim(self) -> int:
        return self.basis.cols


def subspace_from_spanning(ambient: int, vectors: Iterable[Sequence[int]],
                           field: FieldSpec) -> Subspace:
    """Canonical subspace spanned by the given vectors (reduced echelon basis)."""
    m = Mat.from_rows(list(vectors), field, cols=ambient)
    red, pivots = _rref(m)
    basis_rows = [red[i] for i in range(len(pivots))]
    return Subspace(ambient, mat_from_cols(basis_rows, ambient, field))


def zero_subspace(ambient: int, field: FieldSpec) -> Subspace:
    return subspace_from_spanning(ambient, [], field)


def full_subspace(ambient: int, field: FieldSpec) -> Subspace:
    return Subspace(ambient, Mat.identity(ambient, field))


def kernel_basis(m: Mat) -> Subspace:
    """Canonical basis of {v : m v = 0}; dimension cols - rank."""
    p = m.field.characteristic
    red, pivots = _rref(m)
    pivot_set = set(pivots)
    vecs = []
    for fcol in range(m.cols):
        if fcol in pivot_set:
            continue
        v = [0] * m.cols
        v[fcol] = 1
        for r_i, pc in enumerate(pivots):
            v[pc] = (-red[r_i][fcol]) % p
        vecs.append(v)
    return subspace_from_spanning(m.cols, vecs, m.field)


def image_basis(m: Mat) -> Subspace:
    """Canonical basis of the column space; dimension rank."""
    return subspace_from_spanning(m.rows, [list(m.col(j)) for j in range(m.cols)],
                                  m.field)


def solve(m: Mat, rhs: Mat) -> Mat | None:
    """One x with m x = rhs (free variables zero), or None if unsolvable."""
    if m.field != rhs.field:
        raise ValueError("field mismatch in solve")
    if m.rows != rhs.rows:
        raise ValueError("dimension mismatch in solve")
    aug = hstack([m, rhs])
    red, pivots = _rref(aug, pivot_cols=m.cols)
    for i in range(len(pivots), m.rows):
        if any(red[i][m.cols:]):
            return None
    out = [[0] * rhs.cols for _ in range(m.cols)]
    for r_i, pc in enumerate(pivots):
        out[pc] = red[r_i][m.cols:]
    return Mat.from_rows(out, m.field, cols=rhs.cols)


def inverse(m: Mat) -> Mat:
    """Inverse of a square full-rank matrix."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    x = solve(m, Mat.identity(m.rows, m.field))
    if x is None or rank(m) != m.rows:
        raise ValueError("matrix is singular")
    return x


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch in subspace sum")
    vecs = [list(a.basis.col(j)) for j in range(a.dim)]
    vecs += [list(b.basis.col(j)) for j in range(b.dim)]
    return subspace_from_spanning(a.ambient_dim, vecs, a.basis.field)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch in subspace intersection")
    fld = a.basis.field
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(a.ambient_dim, fld)
    ker = kernel_basis(hstack([a.basis, b.basis]))
    vecs = []
    for j in range(ker.dim):
        coeffs = ker.basis.col(j)[:a.dim]
        vec = matmul(a.basis, mat_from_cols([list(coeffs)], a.dim, fld))
        vecs.append(list(vec.col(0)))
    return subspace_from_spanning(a.ambient_dim, vecs, fld)


def subspace_contains(s: Subspace, vector: Sequence[int]) -> bool:
    col = mat_from_cols([list(vector)], s.ambient_dim, s.basis.field)
    return solve(s.basis, col) is not None
