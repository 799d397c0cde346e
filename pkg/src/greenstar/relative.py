"""Relative cohomology of a morphism of complexes, the connecting
morphism, kernel-simple / simple-cokernel quasi-isomorphisms with their
split quasi-inverses, and the product in relative cohomology.

Conventions: a cocycle of s(f) is a pair (a, b) with da = 0 and
db = f(a); the connecting morphism H^(n-1)(B) -> H^n(A, B) is induced
by b -> (0, -b), i.e. minus the inclusion of the second summand.
"""

from __future__ import annotations

from .complexes import Complex, ComplexMap, simple_of_map
from .linalg import Mat, left_inverse, vec_is_zero, zero_vec


class RelativePair:
    """A morphism f: A -> B together with its cached simple s(f)."""

    def __init__(self, f):
        self.f = f
        self.simple = simple_of_map(f)
        self._coh = {}

    @property
    def source(self):
        return self.f.source

    @property
    def target(self):
        return self.f.target

    def split(self, n, v):
        """Split a degree-n vector of s(f) into (a in A^n, b in B^(n-1))."""
        da = self.source.dim(n)
        return tuple(v[:da]), tuple(v[da:])

    def join(self, n, a, b):
        assert len(a) == self.source.dim(n)
        assert len(b) == self.target.dim(n - 1)
        return tuple(a) + tuple(b)

    def cohomology(self, n):
        if n not in self._coh:
            self._coh[n] = self.simple.cohomology(n)
        return self._coh[n]

    def connecting(self, n):
        """H^(n-1)(B) -> H^n(A,B), [b] -> [0, -b] (the map -beta)."""
        hb = self.target.cohomology(n - 1)
        hrel = self.cohomology(n)
        cols = []
        for b in hb.representatives:
            v = self.join(n, zero_vec(self.source.dim(n)),
                          tuple(-x for x in b))
            cols.append(hrel.class_of(v))
        return Mat.from_cols(cols, hrel.dimension)

    def projection_to_source(self):
        """alpha: s(f) -> A, (a, b) -> a."""
        s = self.simple
        A = self.source
        maps = {}
        for n in s.dims:
            da = A.dim(n)
            m = Mat.zeros(da, s.dim(n)).with_block(0, 0, Mat.identity(da))
            maps[n] = m
        return ComplexMap(s, A, maps)


def relative_cohomology(pair, n):
    return pair.cohomology(n)


class SplitExactSequence:
    """0 -> A -f-> B -g-> C -> 0 with a degreewise section of g.

    Exactness is verified degreewise by rank counting; the section need
    not be a chain map.  f must be injective degreewise (checked), its
    left inverses are precomputed for the quasi-inverse formulas.
    """

    def __init__(self, f, g, sections):
        assert f.target is g.source or f.target.dims == g.source.dims
        self.f = f
        self.g = g
        self.A, self.B, self.C = f.source, f.target, g.target
        self.sections = {n: (m if isinstance(m, Mat) else Mat(m))
                         for n, m in sections.items()}
        self.f_left_inverse = {}
        self.validate()

    def section(self, n):
        s = self.sections.get(n)
        if s is None:
            return Mat.zeros(self.B.dim(n), self.C.dim(n))
        return s

    def validate(self):
        from .linalg import rank
        degrees = set(self.A.dims) | set(self.B.dims) | set(self.C.dims)
        for n in degrees:
            comp = self.g.map(n) @ self.f.map(n)
            if not comp.is_zero():
                raise ValueError(f"g o f != 0 at degree {n}")
            if self.left_inv(n) is None:
                raise ValueError(f"f not injective at degree {n}")
            if rank(self.g.map(n)) != self.C.dim(n):
                raise ValueError(f"g not surjective at degree {n}")
            if rank(self.f.map(n)) + self.C.dim(n) != self.B.dim(n):
                raise ValueError(f"not exact at degree {n}")
            gs = self.g.map(n) @ self.section(n)
            if gs != Mat.identity(self.C.dim(n)):
                raise ValueError(f"section fails g o sigma = id at {n}")

    def left_inv(self, n):
        if n not in self.f_left_inverse:
            self.f_left_inverse[n] = left_inverse(self.f.map(n))
        return self.f_left_inverse[n]

    def finv(self, n, v):
        """Preimage under f of a vector known to lie in the image."""
        x = self.left_inv(n).mul_vec(v)
        assert self.f.map(n).mul_vec(x) == tuple(v), \
            "vector not in the image of f"
        return x


def kernel_simple(seq):
    """iota: A -> s(-g), a -> (f(a), 0), and its split quasi-inverse
    pi'(b, c) = f^(-1)(b - sigma(g b) - sigma(dc) + d sigma(c))."""
    A, B, C = seq.A, seq.B, seq.C
    smg = simple_of_map(-seq.g)
    imaps = {}
    for n in smg.dims:
        db, dc = B.dim(n), C.dim(n - 1)
        m = Mat.zeros(db + dc, A.dim(n)).with_block(0, 0, seq.f.map(n))
        imaps[n] = m
    iota = ComplexMap(A, smg, imaps)

    pmaps = {}
    for n in smg.dims:
        db, dc = B.dim(n), C.dim(n - 1)
        # argument of f^(-1) as a map of (b, c)
        arg_b = Mat.identity(db) - seq.section(n) @ seq.g.map(n)
        arg_c = B.diff(n - 1) @ seq.section(n - 1) \
            - seq.section(n) @ C.diff(n - 1)
        arg = arg_b.hstack(arg_c)
        pmaps[n] = seq.left_inv(n) @ arg
        # verify the argument lands in the image of f, columnwise
        for j in range(arg.ncols):
            col = arg.col(j)
            assert seq.f.map(n).mul_vec(pmaps[n].col(j)) == col, \
                f"pi' argument escapes image of f at degree {n}"
    pi_prime = ComplexMap(smg, A, pmaps)
    return iota, pi_prime


def simple_cokernel(seq):
    """pi: s(f)[1] -> C, (a, b) -> g(b), and its split quasi-inverse
    iota'(c) = (f^(-1)(d sigma(c) - sigma(dc)), sigma(c))."""
    A, B, C = seq.A, seq.B, seq.C
    sf = simple_of_map(seq.f)
    sf1 = sf.shift(1)
    pmaps = {}
    for n in sf1.dims:
        da, db = A.dim(n + 1), B.dim(n)
        m = Mat.zeros(C.dim(n), da + db).with_block(0, da, seq.g.map(n))
        pmaps[n] = m
    pi = ComplexMap(sf1, C, pmaps)

    imaps = {}
    for n in set(C.dims):
        da, db = A.dim(n + 1), B.dim(n)
        arg = B.diff(n) @ seq.section(n) - seq.section(n + 1) @ C.diff(n)
        top = seq.left_inv(n + 1) @ arg
        for j in range(arg.ncols):
            assert seq.f.map(n + 1).mul_vec(top.col(j)) == arg.col(j), \
                f"iota' argument escapes image of f at degree {n}"
        m = Mat.zeros(da + db, C.dim(n))
        m = m.with_block(0, 0, top)
        m = m.with_block(da, 0, seq.section(n))
        imaps[n] = m
    iota_prime = ComplexMap(C, sf1, imaps)
    return pi, iota_prime


class PairingSquare:
    """Corner pairings of two morphisms into a commutative square.

    Data: f1: A1 -> B1, f2: A2 -> B2, corner complexes E00, E10, E01,
    E11 with arrows beta: E00 -> E10, alpha: E00 -> E01,
    gamma: E10 -> E11, delta: E01 -> E11, and four bilinear chain
    pairings stored as dicts (n, m) -> Mat acting on Kronecker
    coordinates:

        p00: A1 (x) A2 -> E00      p10: B1 (x) A2 -> E10
        p01: A1 (x) B2 -> E01      p11: B1 (x) B2 -> E11

    Compatibility (the morphism-of-squares condition) is verified on
    construction, as is the Leibniz rule of each pairing.
    """

    def __init__(self, f1, f2, e00, e10, e01, e11,
                 beta, alpha, gamma, delta, p00, p10, p01, p11,
                 check=True):
        self.f1, self.f2 = f1, f2
        self.E00, self.E10, self.E01, self.E11 = e00, e10, e01, e11
        self.beta, self.alpha = beta, alpha
        self.gamma, self.delta = gamma, delta
        self.p = {"00": p00, "10": p10, "01": p01, "11": p11}
        if check:
            self.validate()

    def pair(self, which, n, m, x, y):
        """Pairing value on vectors x (degree n) and y (degree m)."""
        mat = self.pairing_matrix(which, n, m)
        kron = tuple(a * b for a in x for b in y)
        return mat.mul_vec(kron)

    def pairing_matrix(self, which, n, m):
        lft, rgt = self._corners(which)
        mat = self.p[which].get((n, m))
        rows = self._target(which).dim(n + m)
        cols = lft.dim(n) * rgt.dim(m)
        if mat is None:
            return Mat.zeros(rows, cols)
        assert mat.shape() == (rows, cols)
        return mat

    def _corners(self, which):
        a1, b1 = self.f1.source, self.f1.target
        a2, b2 = self.f2.source, self.f2.target
        return {"00": (a1, a2), "10": (b1, a2),
                "01": (a1, b2), "11": (b1, b2)}[which]

    def _target(self, which):
        return {"00": self.E00, "10": self.E10,
                "01": self.E01, "11": self.E11}[which]

    def validate(self):
        # the corner square itself must commute
        for n in set(self.E00.dims):
            lhs = self.gamma.map(n) @ self.beta.map(n)
            rhs = self.delta.map(n) @ self.alpha.map(n)
            if lhs != rhs:
                raise ValueError(f"corner square fails to commute at {n}")
        self._check_leibniz("00")
        self._check_leibniz("10")
        self._check_leibniz("01")
        self._check_leibniz("11")
        # the four commutation squares of the pairing morphism
        self._check_square("00", "10", self.beta, self.f1, True)
        self._check_square("00", "01", self.alpha, self.f2, False)
        self._check_square("01", "11", self.delta, self.f1, True)
        self._check_square("10", "11", self.gamma, self.f2, False)

    def _check_leibniz(self, which):
        lft, rgt = self._corners(which)
        tgt = self._target(which)
        for n in lft.dims:
            for m in rgt.dims:
                pm = self.pairing_matrix(which, n, m)
                # d(x . y) = dx . y + (-1)^n x . dy
                lhs = tgt.diff(n + m) @ pm
                t1 = self.pairing_matrix(which, n + 1, m) \
                    @ lft.diff(n).kron(Mat.identity(rgt.dim(m)))
                t2 = self.pairing_matrix(which, n, m + 1) \
                    @ Mat.identity(lft.dim(n)).kron(rgt.diff(m))
                rhs = t1 + (t2 if n % 2 == 0 else -t2)
                if lhs != rhs:
                    raise ValueError(
                        f"pairing {which} violates Leibniz at ({n},{m})")

    def _check_square(self, src, dst, arrow, fmap, first_slot):
        lft, rgt = self._corners(src)
        for n in lft.dims:
            for m in rgt.dims:
                pm_src = self.pairing_matrix(src, n, m)
                lhs = arrow.map(n + m) @ pm_src
                if first_slot:
                    pm_dst = self.pairing_matrix(dst, n, m)
                    rhs = pm_dst @ fmap.map(n).kron(
                        Mat.identity(rgt.dim(m)))
                else:
                    pm_dst = self.pairing_matrix(dst, n, m)
                    rhs = pm_dst @ Mat.identity(lft.dim(n)).kron(
                        fmap.map(m))
                if lhs != rhs:
                    raise ValueError(
                        f"square {src}->{dst} fails at ({n},{m})")

    # the target pair of the induced relative pairing
    def target_pair(self):
        """E00 -> s(-j) with j(x, y) = -gamma(x) + delta(y), and the
        map x -> ((beta x, alpha x), 0)."""
        e10e01 = self.E10.direct_sum(self.E01)
        jmaps = {}
        for n in e10e01.dims:
            d10 = self.E10.dim(n)
            jmaps[n] = (-self.gamma.map(n)).hstack(self.delta.map(n))
        j = ComplexMap(e10e01, self.E11, jmaps)
        smj = simple_of_map(-j)
        umaps = {}
        for n in smj.dims:
            d10, d01 = self.E10.dim(n), self.E01.dim(n)
            d11 = self.E11.dim(n - 1)
            m = Mat.zeros(d10 + d01 + d11, self.E00.dim(n))
            m = m.with_block(0, 0, self.beta.map(n))
            m = m.with_block(d10, 0, self.alpha.map(n))
            umaps[n] = m
        u = ComplexMap(self.E00, smj, umaps)
        return RelativePair(u), j


def relative_product(pair1, pair2, square, cls1, cls2, n, m):
    """The pairing on relative cohomology classes given representative
    cocycle vectors cls1 in s(f1)^n and cls2 in s(f2)^m.

    Returns (target RelativePair, representative cocycle) with the
    representative [a1.a2, ((b1.a2, (-1)^n a1.b2), (-1)^(n-1) b1.b2)].
    """
    a1, b1 = pair1.split(n, cls1)
    a2, b2 = pair2.split(m, cls2)
    tgt, j = square.target_pair()
    rep = star_representative(square, n, m, a1, b1, a2, b2)
    return tgt, rep


def star_representative(square, n, m, a1, b1, a2, b2):
    """The representative of the product in s(E00 -> s(-j))^(n+m)."""
    from .linalg import vec_scale
    e00 = square.pair("00", n, m, a1, a2)
    e10 = square.pair("10", n - 1, m, b1, a2)
    e01 = square.pair("01", n, m - 1, a1, b2)
    e11 = square.pair("11", n - 1, m - 1, b1, b2)
    sgn_mid = 1 if n % 2 == 0 else -1
    sgn_last = -1 if n % 2 == 0 else 1
    e01 = vec_scale(sgn_mid, e01)
    e11 = vec_scale(sgn_last, e11)
    return tuple(e00) + tuple(e10) + tuple(e01) + tuple(e11)


def universal_square(f1, f2):
    """The tautological pairing square with tensor-product corners:
    E00 = A1 (x) A2, ..., E11 = B1 (x) B2, pairings the block
    inclusions.  Every identity about relative products can be probed
    here without choosing an algebra."""
    from .iterated import tensor_chain_map, tensor_complex
    A1, B1 = f1.source, f1.target
    A2, B2 = f2.source, f2.target
    e00, l00 = tensor_complex(A1, A2)
    e10, l10 = tensor_complex(B1, A2)
    e01, l01 = tensor_complex(A1, B2)
    e11, l11 = tensor_complex(B1, B2)
    beta = tensor_chain_map(f1, ComplexMap.identity(A2),
                            src=(e00, l00), tgt=(e10, l10))
    alpha = tensor_chain_map(ComplexMap.identity(A1), f2,
                             src=(e00, l00), tgt=(e01, l01))
    gamma = tensor_chain_map(ComplexMap.identity(B1), f2,
                             src=(e10, l10), tgt=(e11, l11))
    delta = tensor_chain_map(f1, ComplexMap.identity(B2),
                             src=(e01, l01), tgt=(e11, l11))

    def inclusions(loc, lft, rgt, tgt):
        out = {}
        for (n, m), (deg, off) in loc.items():
            sz = lft.dim(n) * rgt.dim(m)
            out[(n, m)] = Mat.zeros(tgt.dim(deg), sz).with_block(
                off, 0, Mat.identity(sz))
        return out

    return PairingSquare(
        f1, f2, e00, e10, e01, e11, beta, alpha, gamma, delta,
        inclusions(l00, A1, A2, e00), inclusions(l10, B1, A2, e10),
        inclusions(l01, A1, B2, e01), inclusions(l11, B1, B2, e11))


def second_factor_pairing(square, n, m, b1, a2, b2):
    """The pairing H^(n-1)(B1) (x) H^m(A2,B2) -> H^(n+m-1)(s(-j)),
    [b1] . [a2, b2] = [(b1.a2, 0), (-1)^(n-1) b1.b2] (the A1 = 0 case)."""
    from .linalg import vec_scale, zero_vec
    e10 = square.pair("10", n - 1, m, b1, a2)
    e01 = zero_vec(square.E01.dim(n + m - 1))
    e11 = square.pair("11", n - 1, m - 1, b1, b2)
    sgn = -1 if n % 2 == 0 else 1
    e11 = vec_scale(sgn, e11)
    return tuple(e10) + tuple(e01) + tuple(e11)
