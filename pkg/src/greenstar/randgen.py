"""Seeded random generators for complexes, chain maps and split exact
sequences.

Complexes are built from an explicit splitting V^n = H^n + K^n + I^n
(cohomology, a complement mapping isomorphically onto the next image,
and the image itself) and then conjugated by random unimodular
matrices.  That keeps every cohomology dimension under control, so
exactness tests run on instances where all nodes are nontrivial with
high probability.
"""

from __future__ import annotations

from fractions import Fraction

from .complexes import Complex, ComplexMap
from .linalg import Mat


def rand_int(rng, bound=2):
    return rng.randint(-bound, bound)


def random_unimodular(rng, n, steps=None, bound=1):
    """Product of elementary row operations; always invertible."""
    m = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    if n <= 1:
        return Mat(tuple(tuple(r) for r in m), n)
    steps = steps if steps is not None else 2 * n
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        c = Fraction(rand_int(rng, bound))
        if not c:
            continue
        for col in range(n):
            m[i][col] += c * m[j][col]
    return Mat(tuple(tuple(r) for r in m), n)


class SplitComplex:
    """A random complex plus its splitting data.

    In split coordinates of degree n the basis order is
    [H^n | K^n | I^n], dim I^n = rank of d^(n-1), and the differential
    maps K^n identically onto I^(n+1).
    """

    def __init__(self, rng, lo, hi, max_h=2, max_r=2, scramble=True):
        self.lo, self.hi = lo, hi
        self.h = {}
        self.r = {}
        for n in range(lo, hi + 1):
            self.h[n] = rng.randint(0, max_h)
            self.r[n] = rng.randint(0, max_r) if n < hi else 0
        dims = {n: self.h[n] + self.r[n] + self.r.get(n - 1, 0)
                for n in range(lo, hi + 1)}
        diffs = {}
        for n in range(lo, hi):
            rows = dims.get(n + 1, 0)
            cols = dims.get(n, 0)
            m = Mat.zeros(rows, cols)
            # K^n block sits after H^n; I^(n+1) block after H+K of n+1
            if self.r[n]:
                m = m.with_block(self.h[n + 1] + self.r[n + 1], self.h[n],
                                 Mat.identity(self.r[n]))
            diffs[n] = m
        self.p = {}
        for n in range(lo, hi + 1):
            if scramble and dims.get(n, 0):
                self.p[n] = random_unimodular(rng, dims[n])
            else:
                self.p[n] = Mat.identity(dims.get(n, 0))
        conj = {}
        for n in range(lo, hi):
            conj[n] = self.p[n + 1] @ diffs[n] @ _inv(self.p[n])
        self.complex = Complex(lo, hi, dims, conj, check=False)

    def dim(self, n):
        return self.complex.dim(n)

    def split_block(self, n, part):
        """Offset and size of 'H', 'K' or 'I' inside split degree n."""
        h = self.h.get(n, 0)
        k = self.r.get(n, 0)
        i = self.r.get(n - 1, 0)
        return {"H": (0, h), "K": (h, k), "I": (h + k, i)}[part]


def _inv(m):
    from .linalg import solve, Mat as M
    cols = []
    for i in range(m.nrows):
        e = tuple(1 if j == i else 0 for j in range(m.nrows))
        x = solve(m, e)
        assert x is not None
        cols.append(x)
    return M.from_cols(cols, m.nrows)


def random_complex(rng, lo=-1, hi=3, max_h=2, max_r=2):
    return SplitComplex(rng, lo, hi, max_h, max_r).complex


def random_chain_map(rng, sa, sb, h_map=None, homotopy_bound=1):
    """Chain map between two SplitComplex instances.

    The map is (cohomology part) + (null-homotopic part): the first is
    prescribed on the H-blocks by random matrices (or `h_map`), the
    second is d s + s d for random degreewise s.
    """
    A, B = sa.complex, sb.complex
    maps = {}
    for n in set(A.dims) | set(B.dims):
        maps[n] = Mat.zeros(B.dim(n), A.dim(n))
    # cohomology part in split coordinates
    for n in set(sa.h) & set(sb.h):
        ha_off, ha = sa.split_block(n, "H")
        hb_off, hb = sb.split_block(n, "H")
        if not (ha and hb):
            continue
        if h_map and n in h_map:
            blk = h_map[n]
        else:
            blk = Mat(tuple(tuple(Fraction(rand_int(rng)) for _ in range(ha))
                            for _ in range(hb)), ha)
        m = Mat.zeros(sb.dim(n), sa.dim(n)).with_block(hb_off, ha_off, blk)
        maps[n] = maps[n] + sb.p[n] @ m @ _inv(sa.p[n])
    # null-homotopic part
    s = {}
    for n in set(A.dims):
        if B.dim(n - 1) and A.dim(n):
            s[n] = Mat(tuple(tuple(Fraction(rand_int(rng, homotopy_bound))
                                   for _ in range(A.dim(n)))
                             for _ in range(B.dim(n - 1))), A.dim(n))
    for n in maps:
        m = maps[n]
        if n in s:
            m = m + B.diff(n - 1) @ s[n]
        if (n + 1) in s:
            m = m + s[n + 1] @ A.diff(n)
        maps[n] = m
    return ComplexMap(A, B, maps)


def random_pair(rng, lo=-1, hi=3, max_h=2, max_r=2):
    """A random morphism f: A -> B with nontrivial cohomology around."""
    sa = SplitComplex(rng, lo, hi, max_h, max_r)
    sb = SplitComplex(rng, lo, hi, max_h, max_r)
    return random_chain_map(rng, sa, sb), sa, sb


def random_quasi_iso(rng, lo=-1, hi=2, max_h=2, max_r=2):
    """A chain map inducing an isomorphism on every cohomology group."""
    sa = SplitComplex(rng, lo, hi, max_h, max_r)
    # rebuild B over A's cohomology profile, with its own ranks
    sb = SplitComplex(rng, lo, hi, 0, 0)
    sb.h = dict(sa.h)
    sb.r = {n: rng.randint(0, max_r) if n < hi else 0
            for n in range(lo, hi + 1)}
    dims = {n: sb.h[n] + sb.r[n] + sb.r.get(n - 1, 0)
            for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        m = Mat.zeros(dims.get(n + 1, 0), dims.get(n, 0))
        if sb.r[n]:
            m = m.with_block(sb.h[n + 1] + sb.r[n + 1], sb.h[n],
                             Mat.identity(sb.r[n]))
        diffs[n] = m
    sb.p = {n: random_unimodular(rng, dims.get(n, 0))
            for n in range(lo, hi + 1)}
    conj = {n: sb.p[n + 1] @ diffs[n] @ _inv(sb.p[n]) for n in range(lo, hi)}
    sb.complex = Complex(lo, hi, dims, conj, check=False)
    h_map = {}
    for n in range(lo, hi + 1):
        if sa.h[n]:
            h_map[n] = random_unimodular(rng, sa.h[n])
    return random_chain_map(rng, sa, sb, h_map=h_map), sa, sb


def random_split_exact(rng, lo=-1, hi=2, max_h=1, max_r=1,
                       twist=True, chain_section=False):
    """A degreewise split short exact sequence 0 -> A -> B -> C -> 0.

    B is A + C conjugated by a random chain automorphism; the returned
    section is the canonical one perturbed by f . tau for random tau
    (so it is *not* a chain map unless chain_section is set).
    """
    sa = SplitComplex(rng, lo, hi, max_h, max_r)
    sc = SplitComplex(rng, lo, hi, max_h, max_r)
    A, C = sa.complex, sc.complex
    B0 = A.direct_sum(C)
    # chain automorphism of A + C: (a, c) -> (a + u c, c) then
    # (a, c) -> (a, v a + c) for chain maps u: C -> A, v: A -> C
    u = random_chain_map(rng, sc, sa)
    v = random_chain_map(rng, sa, sc)
    phi = {}
    phi_inv = {}
    for n in range(lo - 1, hi + 2):
        da, dc = A.dim(n), C.dim(n)
        e1 = Mat.identity(da + dc).with_block(0, da, u.map(n)) if twist \
            else Mat.identity(da + dc)
        e2 = Mat.identity(da + dc).with_block(da, 0, v.map(n)) if twist \
            else Mat.identity(da + dc)
        phi[n] = e1 @ e2
        e2i = Mat.identity(da + dc).with_block(da, 0, -v.map(n)) if twist \
            else Mat.identity(da + dc)
        e1i = Mat.identity(da + dc).with_block(0, da, -u.map(n)) if twist \
            else Mat.identity(da + dc)
        phi_inv[n] = e2i @ e1i
    diffs = {n: phi[n + 1] @ B0.diff(n) @ phi_inv[n]
             for n in range(lo, hi)}
    B = Complex(lo, hi, dict(B0.dims), diffs, check=False)
    fmaps = {}
    gmaps = {}
    smaps = {}
    for n in range(lo - 1, hi + 2):
        da, dc = A.dim(n), C.dim(n)
        incl = Mat.zeros(da + dc, da).with_block(0, 0, Mat.identity(da))
        proj = Mat.zeros(dc, da + dc).with_block(0, da, Mat.identity(dc))
        sect = Mat.zeros(da + dc, dc).with_block(da, 0, Mat.identity(dc))
        fmaps[n] = phi[n] @ incl
        gmaps[n] = proj @ phi_inv[n]
        smaps[n] = phi[n] @ sect
        if not chain_section and da and dc:
            tau = Mat(tuple(tuple(Fraction(rand_int(rng, 1))
                                  for _ in range(dc)) for _ in range(da)), dc)
            smaps[n] = smaps[n] + fmaps[n] @ tau
    f = ComplexMap(A, B, fmaps)
    g = ComplexMap(B, C, gmaps)
    return f, g, smaps
