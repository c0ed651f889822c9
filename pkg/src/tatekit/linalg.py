"""Deterministic dense linear algebra over an exact field.

Matrices are immutable row-major grids of ``Scalar``.  Subspaces are stored
by their reduced row echelon basis, which is a canonical form: two subspaces
are equal iff their stored bases are equal row for row.  Quotient bases are
fixed by echelon completion, so every downstream determinant-line scalar is
reproducible run to run.
"""

from __future__ import annotations

from .errors import AmbientMismatch, FieldMismatch, NonSquare, NotContained
from .fields import FieldCtx, Scalar


class Matrix:
    __slots__ = ("ctx", "rows", "cols", "entries")

    def __init__(self, ctx: FieldCtx, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count %d != %d x %d" % (len(entries), rows, cols))
        for e in entries:
            if not isinstance(e, Scalar) or e.ctx != ctx:
                raise FieldMismatch("matrix entry outside %r" % (ctx,))
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows) -> "Matrix":
        rows = [[ctx.scalar(x) for x in row] for row in rows]
        ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
        return cls(ctx, len(rows), ncols, [x for row in rows for x in row])

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "Matrix":
        one, zero = ctx.one(), ctx.zero()
        return cls(ctx, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, ctx: FieldCtx, rows: int, cols: int) -> "Matrix":
        z = ctx.zero()
        return cls(ctx, rows, cols, [z] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def row_list(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.ctx,
            self.cols,
            self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ctx != other.ctx:
            raise FieldMismatch("matrix product across fields")
        if self.cols != other.rows:
            raise ValueError("shape mismatch %dx%d * %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        zero = self.ctx.zero()
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    if not ri[k].is_zero():
                        acc = acc + ri[k] * other[k, j]
                out.append(acc)
        return Matrix(self.ctx, self.rows, other.cols, out)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ctx == other.ctx
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ctx, self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return "Matrix[%s]" % body


def _rref_rows(ctx: FieldCtx, rows):
    """In-place style Gauss-Jordan on a list of row lists; returns pivots."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: Matrix):
    """Reduced row echelon form of ``m`` along with its pivot columns."""
    rows, pivots = _rref_rows(m.ctx, m.row_list())
    return Matrix.from_rows(m.ctx, rows) if rows else m, pivots


def det(m: Matrix) -> Scalar:
    """Determinant by fraction-preserving Gaussian elimination."""
    if m.rows != m.cols:
        raise NonSquare("det of %dx%d" % (m.rows, m.cols))
    n = m.rows
    if n == 0:
        return m.ctx.one()
    rows = m.row_list()
    sign = 1
    acc = m.ctx.one()
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            return m.ctx.zero()
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        acc = acc * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return acc if sign == 1 else -acc


def solve_in_rowspace(rows, target):
    """Coefficients c with sum_i c_i rows[i] = target, or None.

    ``rows`` is a list of equal-length Scalar rows (not necessarily echelon),
    ``target`` a row of the same length.  The solution is unique whenever the
    rows are independent, which is the only way this helper is used.
    """
    if not rows:
        return [] if all(x.is_zero() for x in target) else None
    ctx = rows[0][0].ctx
    k = len(rows)
    ncols = len(target)
    # Augmented transposed system: columns are the unknown coefficients.
    aug = []
    for j in range(ncols):
        aug.append([rows[i][j] for i in range(k)] + [target[j]])
    red, pivots = _rref_rows(ctx, aug)
    if k in pivots:  # pivot in the RHS column: inconsistent
        return None
    coeffs = [ctx.zero()] * k
    for r, c in enumerate(pivots):
        coeffs[c] = red[r][k]
    return coeffs


class Subspace:
    """A subspace of k^ambient_dim in canonical reduced echelon form."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Matrix, pivots=None):
        if basis.cols != ambient_dim:
            raise AmbientMismatch("basis cols %d != ambient %d" % (basis.cols, ambient_dim))
        if pivots is None:
            basis, pivots = rref(basis)
            rows = [r for r in basis.row_list() if any(not x.is_zero() for x in r)]
            basis = Matrix.from_rows(basis.ctx, rows) if rows else Matrix.zero(basis.ctx, 0, ambient_dim)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, ambient_dim: int, rows) -> "Subspace":
        if not rows:
            return cls.zero(ctx, ambient_dim)
        m = Matrix.from_rows(ctx, rows)
        if m.cols != ambient_dim:
            raise AmbientMismatch("rows of length %d in ambient %d" % (m.cols, ambient_dim))
        return cls(ambient_dim, m)

    @classmethod
    def zero(cls, ctx: FieldCtx, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.zero(ctx, 0, ambient_dim), ())

    @classmethod
    def full(cls, ctx: FieldCtx, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ctx, ambient_dim), tuple(range(ambient_dim)))

    @property
    def ctx(self) -> FieldCtx:
        return self.basis.ctx

    @property
    def dim(self) -> int:
        return self.basis.rows

    def rows(self):
        return self.basis.row_list()

    def contains_vector(self, vec) -> bool:
        vec = list(vec)
        rows = self.rows()
        piv = dict(zip(self.pivots, range(len(self.pivots))))
        for c in range(self.ambient_dim):
            if vec[c].is_zero():
                continue
            if c not in piv:
                return False
            f = vec[c]
            vec = [a - f * b for a, b in zip(vec, rows[piv[c]])]
        return True

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch("%d vs %d" % (self.ambient_dim, other.ambient_dim))
        if self.ctx != other.ctx:
            raise FieldMismatch("%r vs %r" % (self.ctx, other.ctx))

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return "Subspace(dim %d of k^%d)" % (self.dim, self.ambient_dim)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    return Subspace.from_rows(a.ctx, a.ambient_dim, a.rows() + b.rows())


def nullspace(m: Matrix):
    """Basis rows of {x : m x = 0}, echelon over the free columns."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    out = []
    for f in free:
        vec = [m.ctx.zero()] * m.cols
        vec[f] = m.ctx.one()
        for r, c in enumerate(pivots):
            vec[c] = -red[r, f]
        out.append(vec)
    return out


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ctx, a.ambient_dim)
    stacked = Matrix.from_rows(a.ctx, a.rows() + b.rows())
    vecs = []
    for x in nullspace(stacked.transpose()):
        alpha = x[: a.dim]
        vec = [a.ctx.zero()] * a.ambient_dim
        for coef, row in zip(alpha, a.rows()):
            if not coef.is_zero():
                vec = [v + coef * r for v, r in zip(vec, row)]
        vecs.append(vec)
    return Subspace.from_rows(a.ctx, a.ambient_dim, vecs)


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    """Whether every vector of b lies in a."""
    a._check(b)
    return all(a.contains_vector(row) for row in b.rows())


def quotient_basis(sub: Subspace, sup: Subspace):
    """Canonical coset representatives for sup/sub, ascending pivot order.

    The representatives are the echelon rows of sup whose pivots are not
    pivots of sub; their classes form a basis of the quotient.
    """
    sub._check(sup)
    if not subspace_contains(sup, sub):
        raise NotContained("quotient needs sub <= sup")
    sub_piv = set(sub.pivots)
    return [row for row, piv in zip(sup.rows(), sup.pivots) if piv not in sub_piv]


def quotient_dim(sub: Subspace, sup: Subspace) -> int:
    return len(quotient_basis(sub, sup))


def quotient_coords(sub: Subspace, reps, vec):
    """Coordinates of ``vec`` mod ``sub`` w.r.t. quotient representatives.

    ``reps`` must be independent mod sub and vec must lie in sub + span(reps);
    returns the rep coefficients, discarding the sub component.
    """
    coeffs = solve_in_rowspace(list(reps) + sub.rows(), list(vec))
    if coeffs is None:
        raise NotContained("vector outside sub + span(reps)")
    return coeffs[: len(reps)]


def all_subspaces(ctx: FieldCtx, ambient_dim: int):
    """Every subspace of k^ambient_dim (tiny prime fields only)."""
    if ctx.kind != "Fp":
        raise ValueError("enumeration needs a finite field")
    vectors = [[]]
    for _ in range(ambient_dim):
        vectors = [v + [x] for v in vectors for x in ctx.elements()]
    seen = set()
    out = []
    from itertools import combinations

    nonzero = [v for v in vectors if any(not x.is_zero() for x in v)]
    for r in range(ambient_dim + 1):
        for combo in combinations(nonzero, r):
            s = Subspace.from_rows(ctx, ambient_dim, list(combo))
            if s.dim == r and s not in seen:
                seen.add(s)
                out.append(s)
    return out
