"""Finite Dolbeault algebras over the Gaussian rationals.

An algebra is a bigraded space with two differentials of types (1,0)
and (0,1), an antilinear conjugation swapping the bidegrees, and a
graded-commutative associative product; d = del + delbar squares to
zero.  Reality with respect to a twist is the conjugation eigenvalue:
x real of twist p means conj(x) = (-1)^p x, so no transcendental
factor is ever materialized.

Shipped generator families: the exterior algebra of a complex torus
(zero differential) and Iwasawa-type twists with nonzero del delbar,
re-verified against all axioms on construction.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from itertools import combinations

from .linalg import Mat


class GaussQ:
    """A Gaussian rational re + im*i with exact field arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(x):
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussQ(x)
        raise TypeError(f"cannot coerce {x!r} to GaussQ")

    def __add__(self, other):
        o = GaussQ.coerce(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussQ.coerce(other)
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussQ.coerce(other) - self

    def __mul__(self, other):
        o = GaussQ.coerce(other)
        return GaussQ(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussQ.coerce(other)
        d = o.re * o.re + o.im * o.im
        if not d:
            raise ZeroDivisionError
        return GaussQ((self.re * o.re + self.im * o.im) / d,
                      (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return GaussQ.coerce(other) / self

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def conj(self):
        return GaussQ(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return gauss_str(self)


I = GaussQ(0, 1)


def gauss_str(z):
    """Format as 'a/b+c/d i' (both parts always printed)."""
    z = GaussQ.coerce(z)
    im = str(z.im)
    sign = "+" if not im.startswith("-") else "-"
    return f"{z.re}{sign}{im.lstrip('-')}i"


_GAUSS_RE = _re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)\s*"
    r"(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*i\s*$")


def parse_gauss(s):
    m = _GAUSS_RE.match(s)
    if not m:
        # allow a bare rational
        return GaussQ(Fraction(s.strip()))
    im = Fraction(m.group("im"))
    if m.group("sign") == "-":
        im = -im
    return GaussQ(Fraction(m.group("re")), im)


class BigradedSpace:
    """Shared shape of Dolbeault algebras and modules: bigraded space
    with del, delbar and the antilinear conjugation."""

    def _init_bigraded(self, dims, del_, delbar, conj):
        self.dims = {tuple(b): d for b, d in dims.items() if d}
        self.del_ = {tuple(b): m for b, m in del_.items()}
        self.delbar = {tuple(b): m for b, m in delbar.items()}
        self.conj = {tuple(b): m for b, m in conj.items()}

    # -- shape helpers ------------------------------------------------------

    def dim(self, b):
        return self.dims.get(tuple(b), 0)

    def bidegrees(self):
        return sorted(self.dims)

    def bidegrees_of_total(self, n):
        return [b for b in self.bidegrees() if b[0] + b[1] == n]

    def degree_range(self):
        if not self.dims:
            return (0, -1)
        totals = [p + q for p, q in self.dims]
        return (min(totals), max(totals))

    def del_matrix(self, b):
        b = tuple(b)
        m = self.del_.get(b)
        if m is None:
            return Mat.zeros(self.dim((b[0] + 1, b[1])), self.dim(b))
        return m

    def delbar_matrix(self, b):
        b = tuple(b)
        m = self.delbar.get(b)
        if m is None:
            return Mat.zeros(self.dim((b[0], b[1] + 1)), self.dim(b))
        return m

    def conj_matrix(self, b):
        b = tuple(b)
        m = self.conj.get(b)
        if m is None:
            return Mat.zeros(self.dim((b[1], b[0])), self.dim(b))
        return m

    # -- elements -----------------------------------------------------------

    def zero(self, twist=0):
        return AlgElement(self, {}, twist)

    def element(self, comps, twist=0):
        return AlgElement(self, comps, twist)

    def basis_element(self, b, i, twist=0):
        b = tuple(b)
        v = tuple(GaussQ(1) if j == i else GaussQ(0)
                  for j in range(self.dim(b)))
        return AlgElement(self, {b: v}, twist)

    def basis_elements(self, b):
        return [self.basis_element(b, i) for i in range(self.dim(b))]

    def validate_differentials(self):
        for b in self.bidegrees():
            p, q = b
            dd = self.del_matrix((p + 1, q)) @ self.del_matrix(b)
            if not dd.is_zero():
                raise ValueError(f"del^2 != 0 at {b}")
            bb = self.delbar_matrix((p, q + 1)) @ self.delbar_matrix(b)
            if not bb.is_zero():
                raise ValueError(f"delbar^2 != 0 at {b}")
            mixed = self.del_matrix((p, q + 1)) @ self.delbar_matrix(b) \
                + self.delbar_matrix((p + 1, q)) @ self.del_matrix(b)
            if not mixed.is_zero():
                raise ValueError(f"del delbar + delbar del != 0 at {b}")
            # kappa^2 = id: K(q,p) conj(K(p,q)) = id
            k1 = self.conj_matrix(b)
            k2 = self.conj_matrix((q, p))
            comp = k2 @ Mat(tuple(tuple(GaussQ.coerce(e).conj() for e in r)
                                  for r in k1.rows), k1.ncols)
            if comp != Mat.identity(self.dim(b)):
                raise ValueError(f"conjugation not involutive at {b}")
            # kappa del = delbar kappa (antilinear form)
            lhs = self.conj_matrix((p + 1, q)) @ Mat(
                tuple(tuple(GaussQ.coerce(e).conj() for e in r)
                      for r in self.del_matrix(b).rows),
                self.del_matrix(b).ncols)
            rhs = self.delbar_matrix((q, p)) @ self.conj_matrix(b)
            if lhs != rhs:
                raise ValueError(f"conj . del != delbar . conj at {b}")


class DolbeaultAlgebra(BigradedSpace):
    """Bigraded algebra with del, delbar, antilinear conjugation and a
    graded-commutative associative product.

    mult is sparse: mult[(b1, b2)][(i, j)] = {k: coeff} for the product
    of basis i of bidegree b1 with basis j of bidegree b2.
    conj[(p, q)] is the matrix K with kappa(x) = K conj(coords)."""

    def __init__(self, dims, del_, delbar, conj, mult, unit,
                 labels=None, check=True, check_assoc=True):
        self._init_bigraded(dims, del_, delbar, conj)
        self.mult = mult
        self.unit = tuple(GaussQ.coerce(c) for c in unit)
        self.labels = labels or {}
        if check:
            self.validate(check_assoc=check_assoc)

    def one(self):
        return AlgElement(self, {(0, 0): self.unit}, 0)

    def validate(self, check_assoc=True):
        self.validate_differentials()
        self._check_unit()
        self._check_products(check_assoc)

    def _check_unit(self):
        one = self.one()
        for b in self.bidegrees():
            for x in self.basis_elements(b):
                if (one.wedge(x) - x).comps or (x.wedge(one) - x).comps:
                    raise ValueError("unit fails")

    def _check_products(self, check_assoc):
        basis = [(b, i) for b in self.bidegrees()
                 for i in range(self.dim(b))]
        els = {bi: self.basis_element(*bi) for bi in basis}
        for b1, i in basis:
            x = els[(b1, i)]
            n = b1[0] + b1[1]
            for b2, j in basis:
                y = els[(b2, j)]
                m = b2[0] + b2[1]
                xy = x.wedge(y)
                for bb in xy.comps:
                    if (bb[0], bb[1]) != (b1[0] + b2[0], b1[1] + b2[1]):
                        raise ValueError("product violates bidegree")
                yx = y.wedge(x)
                sgn = -1 if (n * m) % 2 else 1
                if (xy - yx.scale(sgn)).comps:
                    raise ValueError("product not graded commutative")
                # Leibniz for del and delbar
                for dname in ("del_", "delbar"):
                    dop = getattr(AlgElement, dname)
                    lhs = dop(xy)
                    rhs = dop(x).wedge(y) + x.wedge(dop(y)).scale(sgn_pow(n))
                    if (lhs - rhs).comps:
                        raise ValueError(f"Leibniz fails for {dname}")
        if check_assoc:
            for b1, i in basis:
                x = els[(b1, i)]
                for b2, j in basis:
                    y = els[(b2, j)]
                    xy = x.wedge(y)
                    for b3, k in basis:
                        z = els[(b3, k)]
                        if ((xy.wedge(z)) - x.wedge(y.wedge(z))).comps:
                            raise ValueError("product not associative")


def sgn_pow(n):
    return -1 if n % 2 else 1


class AlgElement:
    """An element of a Dolbeault algebra, bidegree-sparse.

    The twist is bookkeeping for reality checks: x is real of twist p
    when kappa(x) = (-1)^p x; wedge adds twists."""

    __slots__ = ("alg", "comps", "twist")

    def __init__(self, alg, comps, twist=0):
        self.alg = alg
        clean = {}
        for b, v in comps.items():
            v = tuple(GaussQ.coerce(c) for c in v)
            assert len(v) == alg.dim(b), f"bad component length at {b}"
            if any(v):
                clean[tuple(b)] = v
        self.comps = clean
        self.twist = twist

    def component(self, b):
        b = tuple(b)
        v = self.comps.get(b)
        if v is None:
            return tuple(GaussQ(0) for _ in range(self.alg.dim(b)))
        return v

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        return isinstance(other, AlgElement) and self.comps == other.comps

    def __add__(self, other):
        assert self.alg is other.alg
        out = {}
        for b in set(self.comps) | set(other.comps):
            out[b] = tuple(x + y for x, y in
                           zip(self.component(b), other.component(b)))
        return AlgElement(self.alg, out, self.twist)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = GaussQ.coerce(c)
        return AlgElement(self.alg,
                          {b: tuple(c * x for x in v)
                           for b, v in self.comps.items()}, self.twist)

    def __neg__(self):
        return self.scale(-1)

    def wedge(self, other):
        assert self.alg is other.alg
        out = {}
        for b1, v1 in self.comps.items():
            for b2, v2 in other.comps.items():
                struct = self.alg.mult.get((b1, b2))
                if struct is None:
                    continue
                bb = (b1[0] + b2[0], b1[1] + b2[1])
                acc = out.setdefault(
                    bb, [GaussQ(0)] * self.alg.dim(bb))
                for i, c1 in enumerate(v1):
                    if not c1:
                        continue
                    for j, c2 in enumerate(v2):
                        if not c2:
                            continue
                        for k, m in struct.get((i, j), {}).items():
                            acc[k] = acc[k] + c1 * c2 * m
        return AlgElement(self.alg, {b: tuple(v) for b, v in out.items()},
                          self.twist + other.twist)

    def del_(self):
        out = {}
        for b, v in self.comps.items():
            m = self.alg.del_matrix(b)
            if m.is_zero():
                continue
            tb = (b[0] + 1, b[1])
            acc = out.setdefault(tb, [GaussQ(0)] * self.alg.dim(tb))
            for k, val in enumerate(m.mul_vec(v)):
                acc[k] = acc[k] + val
        return AlgElement(self.alg, {b: tuple(v) for b, v in out.items()},
                          self.twist)

    def delbar(self):
        out = {}
        for b, v in self.comps.items():
            m = self.alg.delbar_matrix(b)
            if m.is_zero():
                continue
            tb = (b[0], b[1] + 1)
            acc = out.setdefault(tb, [GaussQ(0)] * self.alg.dim(tb))
            for k, val in enumerate(m.mul_vec(v)):
                acc[k] = acc[k] + val
        return AlgElement(self.alg, {b: tuple(v) for b, v in out.items()},
                          self.twist)

    def d(self):
        return self.del_() + self.delbar()

    def conj(self):
        """kappa: antilinear conjugation swapping bidegrees."""
        out = {}
        for b, v in self.comps.items():
            k = self.alg.conj_matrix(b)
            tb = (b[1], b[0])
            vals = k.mul_vec(tuple(c.conj() for c in v))
            acc = out.setdefault(tb, [GaussQ(0)] * self.alg.dim(tb))
            for i, val in enumerate(vals):
                acc[i] = acc[i] + val
        return AlgElement(self.alg, {b: tuple(v) for b, v in out.items()},
                          self.twist)

    def hodge(self, k=None, kbar=None):
        """F^(k, kbar): keep components with first index >= k and
        second index >= kbar (None meaning no constraint)."""
        out = {}
        for b, v in self.comps.items():
            if k is not None and b[0] < k:
                continue
            if kbar is not None and b[1] < kbar:
                continue
            out[b] = v
        return AlgElement(self.alg, out, self.twist)

    def pi(self, p):
        """pi_p(x) = (x + (-1)^p conj(x)) / 2; real of twist p."""
        c = self.conj().scale(sgn_pow(p))
        half = GaussQ(Fraction(1, 2))
        out = (self + c).scale(half)
        out.twist = p
        return out

    def is_real_twist(self, p):
        return (self.conj() - self.scale(sgn_pow(p))).is_zero()

    def total_degrees(self):
        return sorted({b[0] + b[1] for b in self.comps})

    def degree_part(self, n):
        return AlgElement(self.alg,
                          {b: v for b, v in self.comps.items()
                           if b[0] + b[1] == n}, self.twist)

    def bidegree_part(self, b):
        b = tuple(b)
        if b in self.comps:
            return AlgElement(self.alg, {b: self.comps[b]}, self.twist)
        return AlgElement(self.alg, {}, self.twist)

    def __repr__(self):
        return f"AlgElement({sorted(self.comps)})"


# ---------------------------------------------------------------------------
# shipped algebra families
# ---------------------------------------------------------------------------

def _merge_sign(s, t):
    if set(s) & set(t):
        return None, None
    merged = tuple(sorted(s + t))
    inv = sum(1 for x in t for y in s if y > x)
    return (-1) ** inv, merged


def torus_algebra(g, check=True, check_assoc=None):
    """Exterior algebra on dz_1..dz_g (bidegree (1,0)) and their
    conjugates (0,1), zero differential: the Dolbeault algebra of a
    complex torus on translation-invariant forms."""
    basis = {}
    index = {}
    for p in range(g + 1):
        for q in range(g + 1):
            mons = [(s, t) for s in combinations(range(g), p)
                    for t in combinations(range(g), q)]
            basis[(p, q)] = mons
            index.update({m: ((p, q), i) for i, m in enumerate(mons)})
    dims = {b: len(m) for b, m in basis.items()}

    mult = {}
    for b1, mons1 in basis.items():
        for b2, mons2 in basis.items():
            bb = (b1[0] + b2[0], b1[1] + b2[1])
            if bb not in dims:
                continue
            entry = {}
            for i, (s1, t1) in enumerate(mons1):
                for j, (s2, t2) in enumerate(mons2):
                    sgn_s, s = _merge_sign(s1, s2)
                    if sgn_s is None:
                        continue
                    sgn_t, t = _merge_sign(t1, t2)
                    if sgn_t is None:
                        continue
                    # move dz_(s2) (p2 odd factors) past dzbar_(t1)
                    sgn_cross = (-1) ** (len(t1) * len(s2))
                    _, k = index[(s, t)]
                    entry[(i, j)] = {k: GaussQ(sgn_s * sgn_t * sgn_cross)}
            if entry:
                mult[(b1, b2)] = entry

    conj = {}
    for b, mons in basis.items():
        p, q = b
        rows = dims[(q, p)]
        m = [[GaussQ(0)] * dims[b] for _ in range(rows)]
        for i, (s, t) in enumerate(mons):
            # kappa(dz_S dzbar_T) = (-1)^(|S||T|) dz_T dzbar_S
            sgn = (-1) ** (len(s) * len(t))
            _, k = index[(t, s)]
            m[k][i] = GaussQ(sgn)
        conj[b] = Mat(tuple(tuple(r) for r in m), dims[b])

    unit = tuple(GaussQ(1) if i == 0 else GaussQ(0)
                 for i in range(dims[(0, 0)]))
    labels = {b: [f"dz{list(s)}dzb{list(t)}" for s, t in mons]
              for b, mons in basis.items()}
    if check_assoc is None:
        check_assoc = g <= 2
    alg = DolbeaultAlgebra(dims, {}, {}, conj, mult, unit, labels,
                           check=check, check_assoc=check_assoc)
    alg.gens = g
    alg.basis = basis
    alg.index = index
    return alg


def derivation_matrices(alg, images, bidegree):
    """Extend generator images to an odd derivation on a torus-type
    exterior algebra.  images maps a generator monomial (a one-element
    (s,t) pair) to an AlgElement; returns per-bidegree matrices."""
    out = {}
    for b, mons in alg.basis.items():
        tb = (b[0] + bidegree[0], b[1] + bidegree[1])
        rows = alg.dim(tb)
        m = [[GaussQ(0)] * len(mons) for _ in range(rows)]
        for col, (s, t) in enumerate(mons):
            # factor list in canonical order: dz_s then dzbar_t
            factors = [((i,), ()) for i in s] + [((), (i,)) for i in t]
            for pos in range(len(factors)):
                img = images.get(factors[pos])
                if img is None or img.is_zero():
                    continue
                sgn = (-1) ** pos
                prefix = factors[:pos]
                suffix = factors[pos + 1:]
                term = alg.one().scale(sgn)
                for f in prefix:
                    bi, i = alg.index[f]
                    term = term.wedge(alg.basis_element(bi, i))
                term = term.wedge(img)
                for f in suffix:
                    bi, i = alg.index[f]
                    term = term.wedge(alg.basis_element(bi, i))
                for bb, v in term.comps.items():
                    assert bb == tb, "derivation image has wrong bidegree"
                    for k, val in enumerate(v):
                        m[k][col] = m[k][col] + val
        mat = Mat(tuple(tuple(r) for r in m), len(mons))
        if not mat.is_zero():
            out[b] = mat
    return out


def conjugate_derivation(alg, del_mats):
    """delbar := kappa . del . kappa, as matrices."""
    out = {}
    for b in alg.bidegrees():
        p, q = b
        # delbar at (p, q) = K at (q+1, p) . conj(del at (q, p)) . K(p,q)
        dm = del_mats.get((q, p))
        if dm is None:
            continue
        dmc = Mat(tuple(tuple(GaussQ.coerce(e).conj() for e in r)
                        for r in dm.rows), dm.ncols)
        mat = alg.conj_matrix((q + 1, p)) @ dmc @ _conj_entries(
            alg.conj_matrix(b))
        if not mat.is_zero():
            out[b] = mat
    return out


def _conj_entries(m):
    return Mat(tuple(tuple(GaussQ.coerce(e).conj() for e in r)
                     for r in m.rows), m.ncols)


def iwasawa_algebra(c=1, check_assoc=None):
    """The torus algebra on three generators with del(dz3) = -c dz1 dz2
    and delbar the conjugate twist: nonzero del delbar in the middle
    degrees, which is what the junction differential needs."""
    base = torus_algebra(3, check=False)
    cval = GaussQ.coerce(c)
    img = base.basis_element((2, 0), base.index[((0, 1), ())][1]).scale(-cval)
    images = {((2,), ()): img}
    del_mats = derivation_matrices(base, images, (1, 0))
    delbar_mats = conjugate_derivation(base, del_mats)
    if check_assoc is None:
        check_assoc = False  # wedge unchanged from the torus algebra
    alg = DolbeaultAlgebra(base.dims, del_mats, delbar_mats, base.conj,
                           base.mult, base.unit, base.labels,
                           check=True, check_assoc=check_assoc)
    alg.gens = 3
    alg.basis = base.basis
    alg.index = base.index
    return alg


class DolbeaultModule(BigradedSpace):
    """A bigraded complex with conjugation carrying an action of a
    Dolbeault algebra: A^(p,q) M^(p',q') inside M^(p+p',q+q'), with the
    Leibniz rule for both differentials.

    action has the same sparse layout as an algebra's mult, keyed by
    (algebra bidegree, module bidegree)."""

    def __init__(self, algebra, dims, del_, delbar, conj, action,
                 check=True, check_assoc=True):
        self._init_bigraded(dims, del_, delbar, conj)
        self.algebra = algebra
        self.action = action
        self.mult = None  # module elements do not multiply each other
        if check:
            self.validate(check_assoc=check_assoc)

    def validate(self, check_assoc=True):
        self.validate_differentials()
        alg = self.algebra
        abasis = [(b, i) for b in alg.bidegrees()
                  for i in range(alg.dim(b))]
        mbasis = [(b, i) for b in self.bidegrees()
                  for i in range(self.dim(b))]
        for bm, j in mbasis:
            m_el = self.basis_element(bm, j)
            if (act(alg.one(), m_el) - m_el).comps:
                raise ValueError("unit fails to act as identity")
        for ba, i in abasis:
            a_el = alg.basis_element(ba, i)
            n = ba[0] + ba[1]
            for bm, j in mbasis:
                m_el = self.basis_element(bm, j)
                am = act(a_el, m_el)
                for bb in am.comps:
                    if bb != (ba[0] + bm[0], ba[1] + bm[1]):
                        raise ValueError("action violates bidegree")
                for dname in ("del_", "delbar"):
                    dop = getattr(AlgElement, dname)
                    lhs = dop(am)
                    rhs = act(dop(a_el), m_el) + \
                        act(a_el, dop(m_el)).scale(sgn_pow(n))
                    if (lhs - rhs).comps:
                        raise ValueError(f"action Leibniz fails ({dname})")
                if check_assoc:
                    for ba2, i2 in abasis:
                        a2 = alg.basis_element(ba2, i2)
                        lhs = act(a_el.wedge(a2), m_el)
                        rhs = act(a_el, act(a2, m_el))
                        if (lhs - rhs).comps:
                            raise ValueError("action not associative")


def act(a_el, m_el):
    """The module action of an algebra element on a module element."""
    mod = m_el.alg
    out = {}
    for b1, v1 in a_el.comps.items():
        for b2, v2 in m_el.comps.items():
            struct = mod.action.get((b1, b2))
            if struct is None:
                continue
            bb = (b1[0] + b2[0], b1[1] + b2[1])
            acc = out.setdefault(bb, [GaussQ(0)] * mod.dim(bb))
            for i, c1 in enumerate(v1):
                if not c1:
                    continue
                for j, c2 in enumerate(v2):
                    if not c2:
                        continue
                    for k, m in struct.get((i, j), {}).items():
                        acc[k] = acc[k] + c1 * c2 * m
    return AlgElement(mod, {b: tuple(v) for b, v in out.items()},
                      a_el.twist + m_el.twist)


def act_right(m_el, a_el):
    """m . a := (-1)^(deg m deg a) a . m, degreewise on components."""
    out = m_el.alg.zero(twist=a_el.twist + m_el.twist)
    for bm, vm in m_el.comps.items():
        dm = bm[0] + bm[1]
        mpart = AlgElement(m_el.alg, {bm: vm})
        for ba, va in a_el.comps.items():
            da = ba[0] + ba[1]
            apart = AlgElement(a_el.alg, {ba: va})
            out = out + act(apart, mpart).scale(sgn_pow(dm * da))
    return out


def module_from_algebra(alg):
    """The algebra as a module over itself (check is cheap to skip:
    the axioms restate the algebra's own)."""
    return DolbeaultModule(alg, alg.dims, alg.del_, alg.delbar, alg.conj,
                           alg.mult, check=False)


def random_twisted_algebra(rng, tries=60):
    """Random nilpotent twist of the three-generator torus algebra,
    with all axioms re-verified (retry until they hold)."""
    base = torus_algebra(3, check=False)
    two_zero = [(s, ()) for s in combinations(range(3), 2)]
    for _ in range(tries):
        images = {}
        for gen in range(3):
            if rng.random() < 0.5:
                continue
            img = base.zero()
            for st in two_zero:
                if rng.random() < 0.4:
                    coef = GaussQ(rng.randint(-1, 1))
                    if coef:
                        bi, i = base.index[st]
                        img = img + base.basis_element(bi, i).scale(coef)
            if not img.is_zero():
                images[((gen,), ())] = img
        if not images:
            continue
        del_mats = derivation_matrices(base, images, (1, 0))
        delbar_mats = conjugate_derivation(base, del_mats)
        try:
            alg = DolbeaultAlgebra(base.dims, del_mats, delbar_mats,
                                   base.conj, base.mult, base.unit,
                                   base.labels, check=True,
                                   check_assoc=False)
            alg.gens = 3
            alg.basis = base.basis
            alg.index = base.index
            return alg
        except ValueError:
            continue
    return iwasawa_algebra()
