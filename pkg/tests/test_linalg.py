from fractions import Fraction

import random

from greenstar.linalg import (Mat, block_diag, extend_basis, in_span,
                              left_inverse, nullspace, rank, rref, solve)


def F(x):
    return Fraction(x)


def brute_rank(m):
    """Independent rank oracle: naive elimination without pivot reuse."""
    rows = [list(map(Fraction, r)) for r in m.rows]
    r = 0
    for c in range(m.ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def test_matmul_and_kron():
    a = Mat([[1, 2], [3, 4]])
    b = Mat([[0, 1], [1, 0]])
    assert (a @ b).rows == ((2, 1), (4, 3))
    k = a.kron(b)
    assert k.shape() == (4, 4)
    # (i,j) index convention: e_0 (x) e_1 -> index 1;
    # (a (x) b)(e_0 (x) e_1) = a e_0 (x) b e_1 = (1,3) (x) (1,0)
    v = k.mul_vec((0, 1, 0, 0))
    assert v == (1, 0, 3, 0)


def test_rank_matches_oracle_random():
    rng = random.Random(7)
    for _ in range(60):
        nr = rng.randint(0, 5)
        nc = rng.randint(0, 5)
        m = Mat(tuple(tuple(Fraction(rng.randint(-3, 3)) for _ in range(nc))
                      for _ in range(nr)), nc)
        assert rank(m) == brute_rank(m)


def test_nullspace_and_solve():
    rng = random.Random(11)
    for _ in range(40):
        nr = rng.randint(1, 5)
        nc = rng.randint(1, 5)
        m = Mat(tuple(tuple(Fraction(rng.randint(-2, 2)) for _ in range(nc))
                      for _ in range(nr)), nc)
        ns = nullspace(m)
        assert len(ns) == nc - rank(m)
        for v in ns:
            assert all(not e for e in m.mul_vec(v))
        x0 = tuple(Fraction(rng.randint(-2, 2)) for _ in range(nc))
        b = m.mul_vec(x0)
        x = solve(m, b)
        assert x is not None
        assert m.mul_vec(x) == b


def test_left_inverse():
    m = Mat([[1, 0], [2, 1], [0, 3]])
    li = left_inverse(m)
    assert li @ m == Mat.identity(2)
    # non-injective matrix has no left inverse
    assert left_inverse(Mat([[1, 1], [2, 2], [0, 0]])) is None


def test_extend_basis_deterministic():
    base = Mat.from_cols([(1, 0, 0)], 3)
    cands = Mat.from_cols([(2, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 5)], 3)
    chosen = extend_basis(base, cands, 3)
    assert chosen == [1, 3]


def test_in_span_and_blockdiag():
    m = Mat.from_cols([(1, 2), (0, 1)], 2)
    assert in_span(m, (3, 7))
    d = block_diag([Mat.identity(2), Mat([[5]])])
    assert d.shape() == (3, 3)
    assert d.rows[2] == (0, 0, 5)


def test_rref_pivots_leftmost():
    m = Mat([[0, 1, 2], [0, 2, 4]])
    r, piv = rref(m)
    assert piv == [1]
    assert r.rows[0] == (0, 1, 2)
