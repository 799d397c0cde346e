"""Finite graded-commutative differential algebras over the rationals.

Used for the algebra form of the star product: exterior algebras with
Chevalley-Eilenberg style differentials (d on degree-1 generators given
by degree-2 elements, extended as an odd derivation).  All axioms are
verified eagerly on the monomial basis.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .complexes import Complex, ComplexMap
from .linalg import Mat, vec_is_zero, zero_vec


class DGAlgebra:
    """A differential graded-commutative algebra on an explicit basis.

    mult[(n, m)] maps Kronecker coordinates of deg-n x deg-m vectors to
    deg-(n+m) vectors; unit is a degree-0 vector.
    """

    def __init__(self, complex_, mult, unit, check=True):
        self.complex = complex_
        self.mult = {k: (m if isinstance(m, Mat) else Mat(m))
                     for k, m in mult.items()}
        self.unit = tuple(unit)
        if check:
            self.validate()

    def dim(self, n):
        return self.complex.dim(n)

    def mult_matrix(self, n, m):
        mat = self.mult.get((n, m))
        rows = self.dim(n + m)
        cols = self.dim(n) * self.dim(m)
        if mat is None:
            return Mat.zeros(rows, cols)
        assert mat.shape() == (rows, cols)
        return mat

    def product(self, n, x, m, y):
        kron = tuple(a * b for a in x for b in y)
        return self.mult_matrix(n, m).mul_vec(kron)

    def validate(self):
        c = self.complex
        degs = sorted(c.dims)
        # unit
        for n in degs:
            for j in range(c.dim(n)):
                e = tuple(1 if i == j else 0 for i in range(c.dim(n)))
                assert self.product(0, self.unit, n, e) == e, "left unit"
                assert self.product(n, e, 0, self.unit) == e, "right unit"
        # graded commutativity and Leibniz on basis pairs
        for n in degs:
            for m in degs:
                if n + m not in c.dims and not (n + m == 0):
                    continue
                for i in range(c.dim(n)):
                    x = tuple(1 if k == i else 0 for k in range(c.dim(n)))
                    for j in range(c.dim(m)):
                        y = tuple(1 if k == j else 0
                                  for k in range(c.dim(m)))
                        xy = self.product(n, x, m, y)
                        yx = self.product(m, y, n, x)
                        sgn = -1 if (n * m) % 2 else 1
                        assert tuple(xy) == tuple(
                            sgn * v for v in yx), "graded commutativity"
                        dxy = c.diff(n + m).mul_vec(xy)
                        t1 = self.product(n + 1, c.diff(n).mul_vec(x), m, y)
                        t2 = self.product(n, x, m + 1, c.diff(m).mul_vec(y))
                        sgn = -1 if n % 2 else 1
                        rhs = tuple(a + sgn * b for a, b in zip(t1, t2))
                        assert tuple(dxy) == rhs, "Leibniz"
        # associativity on basis triples
        for n in degs:
            for m in degs:
                for l in degs:
                    if n + m + l > max(degs):
                        continue
                    for i in range(c.dim(n)):
                        x = tuple(1 if k == i else 0
                                  for k in range(c.dim(n)))
                        for j in range(c.dim(m)):
                            y = tuple(1 if k == j else 0
                                      for k in range(c.dim(m)))
                            xy = self.product(n, x, m, y)
                            for t in range(c.dim(l)):
                                z = tuple(1 if k == t else 0
                                          for k in range(c.dim(l)))
                                yz = self.product(m, y, l, z)
                                lhs = self.product(n + m, xy, l, z)
                                rhs = self.product(n, x, m + l, yz)
                                assert tuple(lhs) == tuple(rhs), \
                                    "associativity"


def _wedge_sign(s, t):
    """Sign of merging sorted index tuples s, t; None if they collide."""
    if set(s) & set(t):
        return None, None
    merged = tuple(sorted(s + t))
    # count inversions moving t's elements into place
    inv = 0
    for x in t:
        inv += sum(1 for y in s if y > x)
    return (-1) ** inv, merged


def exterior_dga(g, d_gens=None):
    """Exterior algebra on g degree-1 generators, with an optional
    differential given on generators by degree-2 coefficient maps
    d_gens[i] = {(j, k): coeff} meaning d x_i = sum coeff x_j x_k.

    d^2 = 0 is verified on the whole basis (fails for non-integrable
    coefficient choices).
    """
    basis = {}
    index = {}
    for n in range(g + 1):
        mons = list(combinations(range(g), n))
        basis[n] = mons
        index.update({m: (n, i) for i, m in enumerate(mons)})
    dims = {n: len(basis[n]) for n in basis}

    d_gens = d_gens or {}

    def d_monomial(mon):
        """Differential of a basis monomial as {target mon: coeff}."""
        out = {}
        for pos, i in enumerate(mon):
            rest = mon[:pos] + mon[pos + 1:]
            sgn_pos = (-1) ** pos
            for (j, k), coeff in d_gens.get(i, {}).items():
                s, merged = _wedge_sign((j, k), rest)
                if s is None:
                    continue
                c = sgn_pos * s * coeff
                out[merged] = out.get(merged, 0) + c
        return {m: c for m, c in out.items() if c}

    diffs = {}
    for n in range(g):
        m = [[Fraction(0)] * dims[n] for _ in range(dims.get(n + 1, 0))]
        for col, mon in enumerate(basis[n]):
            for tmon, c in d_monomial(mon).items():
                tn, ti = index[tmon]
                assert tn == n + 1
                m[ti][col] += Fraction(c)
        diffs[n] = Mat(tuple(tuple(r) for r in m), dims[n])
    cx = Complex(0, g, dims, diffs)  # raises if d^2 != 0

    mult = {}
    for n in basis:
        for m in basis:
            if n + m > g:
                continue
            rows = dims[n + m]
            cols = dims[n] * dims[m]
            mat = [[Fraction(0)] * cols for _ in range(rows)]
            for i, s in enumerate(basis[n]):
                for j, t in enumerate(basis[m]):
                    sgn, merged = _wedge_sign(s, t)
                    if sgn is None:
                        continue
                    tn, ti = index[merged]
                    mat[ti][i * dims[m] + j] = Fraction(sgn)
            mult[(n, m)] = Mat(tuple(tuple(r) for r in mat), cols)
    unit = tuple(Fraction(1 if i == 0 else 0) for i in range(dims[0]))
    alg = DGAlgebra(cx, mult, unit)
    alg.g = g
    alg.basis = basis
    alg.index = index
    return alg


def heisenberg_dga():
    """Lambda(x1, x2, x3) with d x3 = x1 x2: the smallest example with a
    nonzero differential satisfying d^2 = 0."""
    return exterior_dga(3, {2: {(0, 1): Fraction(1)}})


def random_ce_dga(rng, g=3, tries=40):
    """Random Chevalley-Eilenberg differential on g generators; retries
    until d^2 = 0 holds (the Jacobi condition)."""
    for _ in range(tries):
        d_gens = {}
        for i in range(g):
            if rng.random() < 0.5:
                continue
            pairs = list(combinations(range(g), 2))
            rng.shuffle(pairs)
            terms = {}
            for p in pairs[:rng.randint(1, 2)]:
                terms[p] = Fraction(rng.randint(-1, 1))
            d_gens[i] = {p: c for p, c in terms.items() if c}
        try:
            return exterior_dga(g, d_gens)
        except ValueError:
            continue
    return exterior_dga(g, {})


def exterior_morphism(src, tgt, gen_images):
    """The algebra chain map src -> tgt determined on generators.

    gen_images maps a source generator index to a target generator
    index or None (kill).  Monomials map to signed monomials; the
    result is validated as a chain map; use `is_algebra_map` to check
    multiplicativity in tests.
    """
    maps = {}
    for n, mons in src.basis.items():
        rows = tgt.dim(n)
        cols = len(mons)
        m = [[Fraction(0)] * cols for _ in range(rows)]
        for col, mon in enumerate(mons):
            img = [gen_images.get(i) for i in mon]
            if any(i is None for i in img):
                continue
            if len(set(img)) < len(img):
                continue
            # sort the image indices, tracking the permutation sign
            sgn = 1
            arr = list(img)
            for i in range(len(arr)):
                for j in range(len(arr) - 1 - i):
                    if arr[j] > arr[j + 1]:
                        arr[j], arr[j + 1] = arr[j + 1], arr[j]
                        sgn = -sgn
            tmon = tuple(arr)
            tn, ti = tgt.index[tmon]
            assert tn == n
            m[ti][col] = Fraction(sgn)
        maps[n] = Mat(tuple(tuple(r) for r in m), cols)
    return ComplexMap(src.complex, tgt.complex, maps)


def is_algebra_map(f, src, tgt):
    """Does f respect products and the unit, on all basis pairs?"""
    if f.map(0).mul_vec(src.unit) != tgt.unit:
        return False
    for n in src.complex.dims:
        for m in src.complex.dims:
            for i in range(src.dim(n)):
                x = tuple(1 if k == i else 0 for k in range(src.dim(n)))
                for j in range(src.dim(m)):
                    y = tuple(1 if k == j else 0
                              for k in range(src.dim(m)))
                    lhs = f.map(n + m).mul_vec(src.product(n, x, m, y))
                    rhs = tgt.product(n, f.map(n).mul_vec(x),
                                      m, f.map(m).mul_vec(y))
                    if tuple(lhs) != tuple(rhs):
                        return False
    return True
