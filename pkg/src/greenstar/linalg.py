"""Dense exact linear algebra over the rationals (or any exact field).

Everything here works on immutable matrices whose entries live in an
exact field: `fractions.Fraction` for the homological core, `GaussQ`
(Gaussian rationals) for Dolbeault algebras.  Integers 0 and 1 are
accepted as entries and coerce on arithmetic, so zero/identity matrices
can be built without knowing the field.

Elimination is deterministic (leftmost pivot, smallest row index), so
cohomology representatives and kernel bases are reproducible.
"""

from __future__ import annotations

from fractions import Fraction


class Mat:
    """Immutable dense matrix; rows is a tuple of row tuples."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(r) for r in rows)
        self.rows = rows
        self.nrows = len(rows)
        if rows:
            self.ncols = len(rows[0])
            for r in rows:
                assert len(r) == self.ncols, "ragged rows"
        else:
            assert ncols is not None, "empty matrix needs explicit ncols"
            self.ncols = ncols

    @staticmethod
    def zeros(nrows, ncols):
        return Mat(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @staticmethod
    def identity(n):
        return Mat(tuple(tuple(1 if i == j else 0 for j in range(n))
                         for i in range(n)), n)

    @staticmethod
    def from_cols(cols, nrows):
        cols = list(cols)
        if not cols:
            return Mat.zeros(nrows, 0)
        return Mat(tuple(tuple(c[i] for c in cols) for i in range(nrows)),
                   len(cols))

    def shape(self):
        return (self.nrows, self.ncols)

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.shape() != other.shape():
            return False
        return all(a == b for ra, rb in zip(self.rows, other.rows)
                   for a, b in zip(ra, rb))

    def __hash__(self):
        return hash((self.shape(), self.rows))

    def is_zero(self):
        return all(not e for r in self.rows for e in r)

    def __add__(self, other):
        assert self.shape() == other.shape()
        return Mat(tuple(tuple(a + b for a, b in zip(ra, rb))
                         for ra, rb in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other):
        assert self.shape() == other.shape()
        return Mat(tuple(tuple(a - b for a, b in zip(ra, rb))
                         for ra, rb in zip(self.rows, other.rows)), self.ncols)

    def __neg__(self):
        return Mat(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c):
        return Mat(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __matmul__(self, other):
        assert self.ncols == other.nrows, \
            f"shape mismatch {self.shape()} @ {other.shape()}"
        if self.ncols == 0 or self.nrows == 0 or other.ncols == 0:
            return Mat.zeros(self.nrows, other.ncols)
        ocols = list(zip(*other.rows))
        out = tuple(tuple(sum(a * b for a, b in zip(r, c) if a and b)
                          for c in ocols)
                    for r in self.rows)
        return Mat(out, other.ncols)

    def mul_vec(self, v):
        assert self.ncols == len(v)
        return tuple(sum(a * b for a, b in zip(r, v) if a and b) for r in self.rows)

    def transpose(self):
        if self.nrows == 0 or self.ncols == 0:
            return Mat.zeros(self.ncols, self.nrows)
        return Mat(tuple(zip(*self.rows)), self.nrows)

    def kron(self, other):
        """Kronecker product; index (i,j) of the pair maps to i*other_dim + j."""
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append(tuple(a * b for a in ra for b in rb))
        return Mat(tuple(out), self.ncols * other.ncols)

    def hstack(self, other):
        assert self.nrows == other.nrows
        return Mat(tuple(ra + rb for ra, rb in zip(self.rows, other.rows)),
                   self.ncols + other.ncols)

    def vstack(self, other):
        assert self.ncols == other.ncols
        return Mat(self.rows + other.rows, self.ncols)

    def submatrix(self, row0, nrows, col0, ncols):
        return Mat(tuple(r[col0:col0 + ncols]
                         for r in self.rows[row0:row0 + nrows]), ncols)

    def with_block(self, row0, col0, block):
        """Copy of self with `block` written at (row0, col0)."""
        assert row0 + block.nrows <= self.nrows
        assert col0 + block.ncols <= self.ncols
        rows = [list(r) for r in self.rows]
        for i, br in enumerate(block.rows):
            rows[row0 + i][col0:col0 + block.ncols] = list(br)
        return Mat(tuple(tuple(r) for r in rows), self.ncols)

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols})"


def block_diag(blocks, ncols=None):
    """Block-diagonal matrix from a list of Mat."""
    if not blocks:
        return Mat.zeros(0, 0 if ncols is None else ncols)
    nr = sum(b.nrows for b in blocks)
    nc = sum(b.ncols for b in blocks)
    out = Mat.zeros(nr, nc)
    r = c = 0
    for b in blocks:
        out = out.with_block(r, c, b)
        r += b.nrows
        c += b.ncols
    return out


def _row_echelon(rows, ncols):
    """In-place fraction-free-ish Gaussian elimination.

    Returns (rows, pivot_cols).  Deterministic: scans columns left to
    right, picks the first nonzero entry below the current row.
    """
    pivots = []
    pr = 0
    nrows = len(rows)
    for pc in range(ncols):
        sel = None
        for i in range(pr, nrows):
            if rows[i][pc]:
                sel = i
                break
        if sel is None:
            continue
        if sel != pr:
            rows[pr], rows[sel] = rows[sel], rows[pr]
        piv = rows[pr][pc]
        rows[pr] = [e / piv for e in rows[pr]]
        for i in range(nrows):
            if i != pr and rows[i][pc]:
                f = rows[i][pc]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def rref(m):
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in m.rows]
    rows, pivots = _row_echelon(rows, m.ncols)
    return Mat(tuple(tuple(r) for r in rows), m.ncols), pivots


def rank(m):
    return len(rref(m)[1])


def nullspace(m):
    """Basis of {v : m v = 0} as a list of column vectors (deterministic)."""
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    basis = []
    for fj in free:
        v = [0] * m.ncols
        v[fj] = 1
        for i, pj in enumerate(pivots):
            v[pj] = -r.rows[i][fj]
        basis.append(tuple(v))
    return basis


def solve(m, b):
    """One solution x of m x = b, or None if inconsistent."""
    aug = m.hstack(Mat.from_cols([b], m.nrows))
    r, pivots = rref(aug)
    if m.ncols in pivots:
        return None
    x = [0] * m.ncols
    for i, pj in enumerate(pivots):
        x[pj] = r.rows[i][m.ncols]
    return tuple(x)

def in_span(cols, v):
    """Is v in the column span of `cols` (a Mat)?"""
    return solve(cols, v) is not None


class LinSolver:
    """Factored solver for repeated systems M x = b with the same M.

    One elimination of [M | I] records the row operations; each solve
    is then a single matrix-vector product plus a consistency check.
    """

    def __init__(self, m):
        self.m = m
        aug = m.hstack(Mat.identity(m.nrows))
        r, pivots = rref(aug)
        # pivots beyond m's columns mean rows of the form 0 = e b
        self.pivots = [p for p in pivots if p < m.ncols]
        self.rank = len(self.pivots)
        self.reduced = r.submatrix(0, m.nrows, 0, m.ncols)
        self.elim = r.submatrix(0, m.nrows, m.ncols, m.nrows)

    def solve(self, b):
        """One solution of M x = b, or None."""
        eb = self.elim.mul_vec(b)
        # consistency: rows of the reduced matrix that vanish must have
        # vanishing transformed rhs
        for i in range(self.rank, self.m.nrows):
            if eb[i]:
                return None
        x = [0] * self.m.ncols
        for i, pj in enumerate(self.pivots):
            x[pj] = eb[i]
        # the reduced system may still have free columns entering pivot
        # rows; with x free-part zero the pivot entries are exactly eb
        return tuple(x)

    def in_image(self, b):
        return self.solve(b) is not None


def left_inverse(m):
    """A left inverse of an injective matrix, or None if not injective.

    Solves L m = Id row-by-row via m^T L^T = Id^T, factoring m^T once.
    """
    solver = LinSolver(m.transpose())
    rows = []
    for i in range(m.ncols):
        e = tuple(1 if j == i else 0 for j in range(m.ncols))
        x = solver.solve(e)
        if x is None:
            return None
        rows.append(x)
    return Mat(tuple(rows), m.nrows) if rows else Mat((), m.nrows)


def column_space_basis(m):
    """Indices of a deterministic column basis of the column space."""
    _, pivots = rref(m)
    return pivots


def extend_basis(base, cands, nrows):
    """Greedily extend the column family `base` by columns of `cands`.

    Returns the indices of the chosen candidate columns (smallest index
    first), such that base + chosen spans base + cands.
    """
    cur = base
    chosen = []
    cur_rank = rank(cur)
    for j in range(cands.ncols):
        c = cands.col(j)
        trial = cur.hstack(Mat.from_cols([c], nrows))
        tr = rank(trial)
        if tr > cur_rank:
            chosen.append(j)
            cur = trial
            cur_rank = tr
    return chosen


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def vec_is_zero(v):
    return all(not a for a in v)


def zero_vec(n):
    return (0,) * n


def frac(x):
    """Coerce ints/strings like '3/4' to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x))
