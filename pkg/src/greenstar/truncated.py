"""Truncated relative cohomology: pairs (cocycle, class mod coboundaries),
the four structure maps cl / omega / a / b, their exact sequences, and
the star product.

A truncated class stores one concrete representative b together with
the coboundary subspace of B, so equality of classes is a linear
membership test.  `TruncatedSpace` realizes the whole group as an
explicit subspace of Z^n(A) + B^(n-1)/im(d) for the rank checks of the
exact sequences.
"""

from __future__ import annotations

from .linalg import (Mat, extend_basis, in_span, nullspace, rank, solve,
                     vec_is_zero, vec_scale, vec_sub, zero_vec)
from .relative import RelativePair, star_representative


class TruncatedClass:
    """An element (a, b~) of the truncated relative cohomology of f."""

    def __init__(self, pair, n, a, b, check=True):
        self.pair = pair
        self.n = n
        self.a = tuple(a)
        self.b = tuple(b)
        if check:
            self.validate()

    def validate(self):
        A, B, f = self.pair.source, self.pair.target, self.pair.f
        n = self.n
        assert len(self.a) == A.dim(n)
        assert len(self.b) == B.dim(n - 1)
        if not vec_is_zero(A.diff(n).mul_vec(self.a)):
            raise ValueError("a is not a cocycle")
        fa = f.map(n).mul_vec(self.a)
        db = B.diff(n - 1).mul_vec(self.b)
        if fa != db:
            raise ValueError("f(a) != d b")

    def class_map(self):
        """cl(a, b~) = [a, b] in H^n(A, B)."""
        h = self.pair.cohomology(self.n)
        return h.class_of(self.pair.join(self.n, self.a, self.b))

    def cycle_map(self):
        """omega(a, b~) = a."""
        return self.a

    def same_class(self, other):
        assert self.pair is other.pair or \
            self.pair.f.source.dims == other.pair.f.source.dims
        if self.n != other.n or self.a != other.a:
            return False
        B = self.pair.target
        return in_span(B.coboundaries(self.n - 1), vec_sub(self.b, other.b))

    def __add__(self, other):
        assert self.n == other.n
        return TruncatedClass(self.pair, self.n,
                              tuple(x + y for x, y in zip(self.a, other.a)),
                              tuple(x + y for x, y in zip(self.b, other.b)),
                              check=False)

    def scale(self, c):
        return TruncatedClass(self.pair, self.n, vec_scale(c, self.a),
                              vec_scale(c, self.b), check=False)

    def __neg__(self):
        return self.scale(-1)

    def is_zero_class(self):
        z = TruncatedClass(self.pair, self.n,
                           zero_vec(len(self.a)), zero_vec(len(self.b)),
                           check=False)
        return self.same_class(z)

    def __repr__(self):
        return f"TruncatedClass(n={self.n})"


def a_map(pair, n, avec):
    """a(a~) = (-d a, -f(a)~) in degree n, for a in A^(n-1)."""
    A, f = pair.source, pair.f
    da = A.diff(n - 1).mul_vec(avec)
    fa = f.map(n - 1).mul_vec(avec)
    return TruncatedClass(pair, n, vec_scale(-1, da), vec_scale(-1, fa))


def b_map(pair, n, bvec):
    """b([b]) = (0, -b~) in degree n, for a cocycle b in B^(n-1)."""
    B = pair.target
    if not vec_is_zero(B.diff(n - 1).mul_vec(bvec)):
        raise ValueError("b_map needs a cocycle")
    return TruncatedClass(pair, n, zero_vec(pair.source.dim(n)),
                          vec_scale(-1, bvec))


def star(t1, t2, square):
    """The star product of truncated classes through a pairing square,
    landing in the truncated cohomology of E00 -> s(-j)."""
    n, m = t1.n, t2.n
    tgt, _ = square.target_pair()
    a_out = square.pair("00", n, m, t1.a, t2.a)
    rep = star_representative(square, n, m, t1.a, t1.b, t2.a, t2.b)
    b_out = rep[len(a_out):]
    return TruncatedClass(tgt, n + m, a_out, b_out)


def transport(t, new_pair, phi):
    """Move a truncated class along a morphism of pairs (id, phi),
    where phi: old target -> new target satisfies new_f = phi . old_f."""
    b = phi.map(t.n - 1).mul_vec(t.b)
    return TruncatedClass(new_pair, t.n, t.a, b)


def algebra_star(t1, t2, alg_a, alg_b, f, h=None, sample_degrees=None):
    """The star product over a morphism of algebras f: A -> B:
    (a1, b1~) * (a2, b2~) = (a1 a2, b1 f(a2)~).

    A must be associative; B associative up to a homotopy h with
    h(f(x) (x) f(y) (x) f(z)) = 0.  When h is supplied it is sampled on
    basis triples of the image; nonzero values reject the data.
    """
    if h is not None:
        degs = sample_degrees or sorted(alg_a.complex.dims)
        for n in degs:
            for m in degs:
                for l in degs:
                    for i in range(alg_a.dim(n)):
                        x = tuple(1 if k == i else 0
                                  for k in range(alg_a.dim(n)))
                        fx = f.map(n).mul_vec(x)
                        for j in range(alg_a.dim(m)):
                            y = tuple(1 if k == j else 0
                                      for k in range(alg_a.dim(m)))
                            fy = f.map(m).mul_vec(y)
                            for t in range(alg_a.dim(l)):
                                z = tuple(1 if k == t else 0
                                          for k in range(alg_a.dim(l)))
                                fz = f.map(l).mul_vec(z)
                                if not vec_is_zero(h(n, fx, m, fy, l, fz)):
                                    raise ValueError(
                                        "homotopy does not vanish on the "
                                        "image of f")
    n, m = t1.n, t2.n
    a = alg_a.product(n, t1.a, m, t2.a)
    fa2 = f.map(m).mul_vec(t2.a)
    b = alg_b.product(n - 1, t1.b, m, fa2)
    return TruncatedClass(t1.pair, n + m, a, b)


def algebra_pairing_square(alg_a, alg_b, f):
    """The pairing square of an algebra morphism: corners A, B, B, B,
    arrows f, f, id, id, pairings the products twisted by f."""
    from .relative import PairingSquare
    from .complexes import ComplexMap
    A, B = alg_a.complex, alg_b.complex
    ident = ComplexMap.identity(B)

    def twisted(which):
        out = {}
        for n in sorted(set(A.dims) | set(B.dims)):
            for m in sorted(set(A.dims) | set(B.dims)):
                if which == "00":
                    mat = alg_a.mult_matrix(n, m)
                elif which == "11":
                    mat = alg_b.mult_matrix(n, m)
                elif which == "10":
                    # x . a = x f(a)
                    mat = alg_b.mult_matrix(n, m) @ \
                        Mat.identity(B.dim(n)).kron(f.map(m))
                else:
                    # a . y = f(a) y
                    mat = alg_b.mult_matrix(n, m) @ \
                        f.map(n).kron(Mat.identity(B.dim(m)))
                if not mat.is_zero():
                    out[(n, m)] = mat
        return out

    return PairingSquare(f, f, A, B, B, B, f, f, ident, ident,
                         twisted("00"), twisted("10"),
                         twisted("01"), twisted("11"))


def kernel_simple_pullback(t, pair):
    """Pull a truncated class over A -> s(-j(B+B->B)) back to (A, B) by
    the projection ((x, y), z) -> x (the split quasi-inverse for the
    canonical section)."""
    from .complexes import ComplexMap
    smj = t.pair.target
    B = pair.target
    maps = {}
    for n in smj.dims:
        m = Mat.zeros(B.dim(n), smj.dim(n)).with_block(
            0, 0, Mat.identity(B.dim(n)))
        maps[n] = m
    proj = ComplexMap(smj, B, maps)
    return transport(t, pair, proj)


class TruncatedSpace:
    """Explicit basis of the truncated group at degree n, with matrices
    of the four structure maps for exactness rank checks."""

    def __init__(self, pair, n):
        self.pair = pair
        self.n = n
        A, B, f = pair.source, pair.target, pair.f
        self.z_basis = A.cocycles(n)                       # Z^n(A)
        bnd = B.coboundaries(n - 1)
        picked = extend_basis(bnd, Mat.identity(B.dim(n - 1)), B.dim(n - 1))
        self.q_basis = Mat.from_cols(
            [tuple(1 if i == j else 0 for i in range(B.dim(n - 1)))
             for j in picked], B.dim(n - 1))               # B~^(n-1) reps
        self.bnd = bnd
        # constraint f(Z x) = d(Q y)
        fz = f.map(n) @ self.z_basis
        dq = B.diff(n - 1) @ self.q_basis
        cons = fz.hstack(-dq)
        self.solutions = nullspace(cons)                   # pairs (x, y)
        self.dimension = len(self.solutions)
        self.zc = self.z_basis.ncols

    def element(self, idx):
        sol = self.solutions[idx]
        x, y = sol[:self.zc], sol[self.zc:]
        a = self.z_basis.mul_vec(x)
        b = self.q_basis.mul_vec(y)
        return TruncatedClass(self.pair, self.n, a, b)

    def elements(self):
        return [self.element(i) for i in range(self.dimension)]

    def coords_of(self, t):
        """Coordinates of a TruncatedClass on this basis (class-level)."""
        x = solve(self.z_basis, t.a)
        assert x is not None
        # express b in q + boundary coordinates
        resolve = self.bnd.hstack(self.q_basis)
        w = solve(resolve, t.b)
        assert w is not None
        y = w[self.bnd.ncols:]
        target = tuple(x) + tuple(y)
        sols = Mat.from_cols(self.solutions, len(target))
        c = solve(sols, target)
        assert c is not None, "element not in the truncated group"
        return c

    # matrices of the structure maps, for exactness checks
    def cl_matrix(self):
        h = self.pair.cohomology(self.n)
        cols = [h.class_of(self.pair.join(self.n, e.a, e.b))
                for e in self.elements()]
        return Mat.from_cols(cols, h.dimension)

    def omega_matrix(self):
        cols = [e.a for e in self.elements()]
        return Mat.from_cols(cols, self.pair.source.dim(self.n))

    def a_map_matrix(self):
        """Matrix of a: A~^(n-1) -> truncated^n on quotient reps."""
        A = self.pair.source
        bnd = A.coboundaries(self.n - 1)
        picked = extend_basis(bnd, Mat.identity(A.dim(self.n - 1)),
                              A.dim(self.n - 1))
        reps = [tuple(1 if i == j else 0 for i in range(A.dim(self.n - 1)))
                for j in picked]
        cols = [self.coords_of(a_map(self.pair, self.n, r)) for r in reps]
        return Mat.from_cols(cols, self.dimension), len(reps)

    def b_map_matrix(self):
        hb = self.pair.target.cohomology(self.n - 1)
        cols = [self.coords_of(b_map(self.pair, self.n, r))
                for r in hb.representatives]
        return Mat.from_cols(cols, self.dimension), hb.dimension
