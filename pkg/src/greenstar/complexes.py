"""Bounded cochain complexes of finite-dimensional rational vector spaces.

A `Complex` stores an explicit degree interval, per-degree dimensions
and the differentials as exact matrices; everything outside the range
is the zero space.  `d(n+1) @ d(n) = 0` is checked at construction, so
sign errors die immediately instead of deep inside a product.
"""

from __future__ import annotations

from .linalg import (LinSolver, Mat, block_diag, extend_basis, in_span,
                     nullspace, rank, solve, vec_is_zero, zero_vec)


class Complex:
    """A cochain complex concentrated in a finite degree interval."""

    def __init__(self, lo, hi, dims, diffs, labels=None, check=True):
        """
        lo, hi   -- inclusive degree interval
        dims     -- dict degree -> dimension (zero entries may be omitted)
        diffs    -- dict degree n -> Mat of shape (dim(n+1), dim(n))
        labels   -- optional dict degree -> list of basis label strings
        """
        assert lo <= hi + 1
        self.lo = lo
        self.hi = hi
        self.dims = {n: d for n, d in dims.items() if d}
        self._diffs = {}
        for n, m in diffs.items():
            em = m if isinstance(m, Mat) else Mat(m)
            if em.nrows or em.ncols:
                assert em.shape() == (self.dim(n + 1), self.dim(n)), \
                    f"diff({n}) has shape {em.shape()}, expected " \
                    f"({self.dim(n+1)}, {self.dim(n)})"
            if not em.is_zero():
                self._diffs[n] = em
        self.labels = dict(labels) if labels else {}
        if check:
            self.validate()

    def dim(self, n):
        return self.dims.get(n, 0)

    def diff(self, n):
        d = self._diffs.get(n)
        if d is None:
            return Mat.zeros(self.dim(n + 1), self.dim(n))
        return d

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def validate(self):
        for n in self.degrees():
            if not (self.lo <= n <= self.hi) and self.dim(n):
                raise ValueError(f"dimension outside range at degree {n}")
        for n in range(self.lo - 1, self.hi + 1):
            dd = self.diff(n + 1) @ self.diff(n)
            if not dd.is_zero():
                raise ValueError(f"d^2 != 0 at degree {n}")

    def total_dim(self):
        return sum(self.dims.values())

    def euler_characteristic(self):
        return sum((-1) ** n * d for n, d in self.dims.items())

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        degs = set(self.dims) | set(other.dims)
        if any(self.dim(n) != other.dim(n) for n in degs):
            return False
        return all(self.diff(n) == other.diff(n)
                   for n in range(min(self.lo, other.lo) - 1,
                                  max(self.hi, other.hi) + 1))

    def __repr__(self):
        ds = ", ".join(f"{n}:{self.dims[n]}" for n in sorted(self.dims))
        return f"Complex[{self.lo},{self.hi}]({ds})"

    def shift(self, k):
        """Shifted complex: degree n holds the old degree n+k, d -> (-1)^k d."""
        dims = {n - k: d for n, d in self.dims.items()}
        sign = 1 if k % 2 == 0 else -1
        diffs = {n - k: (m if sign == 1 else -m)
                 for n, m in self._diffs.items()}
        return Complex(self.lo - k, self.hi - k, dims, diffs, check=False)

    def bete_truncation(self, p):
        """Kill all degrees below p (and the differential into degree p)."""
        dims = {n: d for n, d in self.dims.items() if n >= p}
        diffs = {n: m for n, m in self._diffs.items() if n >= p}
        return Complex(max(self.lo, p), max(self.hi, p - 1), dims, diffs,
                       check=False)

    def direct_sum(self, other):
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        dims = {}
        diffs = {}
        for n in range(lo, hi + 1):
            dims[n] = self.dim(n) + other.dim(n)
        for n in range(lo, hi + 1):
            diffs[n] = block_diag([self.diff(n), other.diff(n)])
        return Complex(lo, hi, dims, diffs, check=False)

    def cocycles(self, n):
        """Basis of ker d(n) as columns of a Mat."""
        return Mat.from_cols(nullspace(self.diff(n)), self.dim(n))

    def coboundaries(self, n):
        """The matrix d(n-1), whose column span is the coboundary space."""
        return self.diff(n - 1)

    def cohomology(self, n):
        return CohomologySpace(self, n)


class CohomologySpace:
    """H^n of a complex with stored cocycle/coboundary data.

    Representatives are chosen by deterministic leftmost-pivot greedy
    extension of the coboundary space inside the cocycle space.
    """

    def __init__(self, cx, n):
        self.complex = cx
        self.n = n
        self.cocycles = cx.cocycles(n)
        self.coboundaries = cx.coboundaries(n)
        chosen = extend_basis(self.coboundaries, self.cocycles, cx.dim(n))
        self.representatives = [self.cocycles.col(j) for j in chosen]
        self.dimension = len(self.representatives)
        # columns [coboundary basis | representatives]; class coordinates
        # of a cocycle are the coefficients on the representative block.
        self._bnd_rank = rank(self.coboundaries)
        self._resolve = LinSolver(self.coboundaries.hstack(
            Mat.from_cols(self.representatives, cx.dim(n))))
        self._bnd_solver = LinSolver(self.coboundaries)

    def is_cocycle(self, v):
        return vec_is_zero(self.complex.diff(self.n).mul_vec(v))

    def is_coboundary(self, v):
        return self._bnd_solver.in_image(v)

    def class_of(self, v):
        """Coordinates of [v] on the representative basis (v a cocycle)."""
        assert self.is_cocycle(v), "class_of needs a cocycle"
        x = self._resolve.solve(v)
        assert x is not None, "cocycle not in span of boundaries+reps"
        return tuple(x[self.coboundaries.ncols:])

    def same_class(self, u, v):
        return self.is_coboundary(tuple(a - b for a, b in zip(u, v)))

    def __repr__(self):
        return f"H^{self.n} (dim {self.dimension})"


class ComplexMap:
    """A degreewise linear map commuting with the differentials."""

    def __init__(self, source, target, maps, check=True):
        self.source = source
        self.target = target
        self.maps = {}
        for n, m in maps.items():
            em = m if isinstance(m, Mat) else Mat(m)
            assert em.shape() == (target.dim(n), source.dim(n)), \
                f"map({n}) has shape {em.shape()}, expected " \
                f"({target.dim(n)}, {source.dim(n)})"
            if not em.is_zero():
                self.maps[n] = em
        if check:
            self.validate()

    @staticmethod
    def identity(cx):
        return ComplexMap(cx, cx, {n: Mat.identity(cx.dim(n))
                                   for n in cx.dims}, check=False)

    @staticmethod
    def zero(source, target):
        return ComplexMap(source, target, {}, check=False)

    def map(self, n):
        m = self.maps.get(n)
        if m is None:
            return Mat.zeros(self.target.dim(n), self.source.dim(n))
        return m

    def degrees(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo, hi + 1)

    def validate(self):
        for n in self.degrees():
            lhs = self.target.diff(n) @ self.map(n)
            rhs = self.map(n + 1) @ self.source.diff(n)
            if lhs != rhs:
                raise ValueError(f"chain condition fails at degree {n}")

    def compose(self, other):
        """self after other (other first)."""
        assert other.target is self.source or \
            other.target.dims == self.source.dims
        return ComplexMap(other.source, self.target,
                          {n: self.map(n) @ other.map(n)
                           for n in self.degrees()}, check=False)

    def __add__(self, other):
        return ComplexMap(self.source, self.target,
                          {n: self.map(n) + other.map(n)
                           for n in set(self.maps) | set(other.maps)},
                          check=False)

    def __sub__(self, other):
        return ComplexMap(self.source, self.target,
                          {n: self.map(n) - other.map(n)
                           for n in set(self.maps) | set(other.maps)},
                          check=False)

    def __neg__(self):
        return ComplexMap(self.source, self.target,
                          {n: -m for n, m in self.maps.items()}, check=False)

    def scale(self, c):
        return ComplexMap(self.source, self.target,
                          {n: m.scale(c) for n, m in self.maps.items()},
                          check=False)

    def shift(self, k):
        return ComplexMap(self.source.shift(k), self.target.shift(k),
                          {n - k: m for n, m in self.maps.items()},
                          check=False)

    def induced_on_cohomology(self, n, src_coh=None, tgt_coh=None):
        """Matrix of H^n(f) on the chosen representative bases."""
        src = src_coh or self.source.cohomology(n)
        tgt = tgt_coh or self.target.cohomology(n)
        cols = [tgt.class_of(self.map(n).mul_vec(v))
                for v in src.representatives]
        return Mat.from_cols(cols, tgt.dimension)

    def is_quasi_iso(self):
        """True iff H^n(f) is an isomorphism in every degree."""
        lo = min(self.source.lo, self.target.lo) - 1
        hi = max(self.source.hi, self.target.hi) + 1
        for n in range(lo, hi + 1):
            src = self.source.cohomology(n)
            tgt = self.target.cohomology(n)
            if src.dimension != tgt.dimension:
                return False
            m = self.induced_on_cohomology(n, src, tgt)
            if rank(m) != src.dimension:
                return False
        return True

    def __repr__(self):
        return f"ComplexMap({self.source!r} -> {self.target!r})"


def simple_of_map(f):
    """The simple s(f): s(f)^n = A^n + B^(n-1), d(a,b) = (da, f(a) - db).

    Returns the complex; use `simple_inclusions` for the block offsets.
    """
    A, B = f.source, f.target
    lo = min(A.lo, B.lo + 1)
    hi = max(A.hi, B.hi + 1)
    dims = {n: A.dim(n) + B.dim(n - 1) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi + 1):
        da, db = A.dim(n), B.dim(n - 1)
        m = Mat.zeros(A.dim(n + 1) + B.dim(n), da + db)
        m = m.with_block(0, 0, A.diff(n))
        m = m.with_block(A.dim(n + 1), 0, f.map(n))
        m = m.with_block(A.dim(n + 1), da, -B.diff(n - 1))
        diffs[n] = m
    return Complex(lo, hi, dims, diffs)


def simple_projections(f, s):
    """The natural maps alpha: s(f) -> A, (a,b) -> a, and the pair
    beta_n: B^(n-1) -> s(f)^n, b -> (0, b), as raw block matrices."""
    A, B = f.source, f.target
    alpha = {}
    beta = {}
    for n in range(s.lo, s.hi + 1):
        da, db = A.dim(n), B.dim(n - 1)
        al = Mat.zeros(da, da + db).with_block(0, 0, Mat.identity(da))
        be = Mat.zeros(da + db, db).with_block(da, 0, Mat.identity(db))
        alpha[n] = al
        beta[n] = be
    return alpha, beta


def cone(f):
    """Mapping cone: cone^n = A^(n+1) + B^n, d(a,b) = (-da, f(a) + db)."""
    A, B = f.source, f.target
    lo = min(A.lo - 1, B.lo)
    hi = max(A.hi - 1, B.hi)
    dims = {n: A.dim(n + 1) + B.dim(n) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi + 1):
        da, db = A.dim(n + 1), B.dim(n)
        m = Mat.zeros(A.dim(n + 2) + B.dim(n + 1), da + db)
        m = m.with_block(0, 0, -A.diff(n + 1))
        m = m.with_block(A.dim(n + 2), 0, f.map(n + 1))
        m = m.with_block(A.dim(n + 2), da, B.diff(n))
        diffs[n] = m
    return Complex(lo, hi, dims, diffs)


def point_complex(n=0, dim=1):
    """A single space in degree n with zero differential."""
    return Complex(n, n, {n: dim}, {})


def two_term_complex(matrix, n=0):
    """[C^n -> C^(n+1)] given by one matrix."""
    m = matrix if isinstance(matrix, Mat) else Mat(matrix)
    return Complex(n, n + 1, {n: m.ncols, n + 1: m.nrows}, {n: m})
