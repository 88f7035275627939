import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from scattered_lab import (
    Elt,
    LinPoly,
    det,
    dickson,
    evaluate,
    kernel_dim_brute,
    kernel_dim_dickson,
    norm_q6_q3,
    r_poly,
    rank,
    submatrix_Mr,
    tower_for_q,
)
from scattered_lab.errors import BadIndex, EnumerationTooLarge
from scattered_lab.linearized import det_cofactor, det_is_zero
from strategies import poly_with_kernel, tower_and_elements


def test_evaluate_examples():
    ctx = tower_for_q(3)
    x = ctx.g**17
    assert LinPoly.identity(ctx)(x) == x
    f = LinPoly([ctx.scalar(-1), ctx.one(), 0, 0, 0, 0])
    fq = ctx.subfield(1).elements
    assert np.all(evaluate(f, fq).is_zero())
    t = LinPoly.trace(ctx)(x)
    assert t.frob(1) == t


def test_dickson_rows_of_r_poly():
    ctx = tower_for_q(5)
    m, b = ctx.g**3, ctx.g**101
    M = dickson(r_poly(m, b))
    row = lambda i: [Elt(ctx, M.c[i, j]) for j in range(6)]
    assert row(0) == [m, b, 0, 0, 1, 0]
    assert row(5) == [b.frob(5), 0, 0, 1, 0, m.frob(5)]
    assert row(2) == [1, 0, m.frob(2), b.frob(2), 0, 0]
    ident = dickson(LinPoly.identity(ctx))
    assert np.array_equal(ident.c[..., 0], np.eye(6, dtype=np.int64))
    assert not ident.c[..., 1:].any()


@given(tower_and_elements(n=12, qs=(2, 3, 4, 5)))
def test_dickson_is_additive(data):
    ctx, *xs = data
    f, g = LinPoly(xs[:6]), LinPoly(xs[6:])
    assert np.array_equal(dickson(f + g).c, (dickson(f) + dickson(g)).c)


@given(tower_and_elements(n=7, qs=(2, 3, 4, 5, 9)))
def test_dickson_matrix_acts_on_conjugate_vector(data):
    ctx, x, *coeffs = data
    f = LinPoly(coeffs)
    M = dickson(f)
    conj = [x.frob(j) for j in range(6)]
    for i in range(6):
        acc = ctx.zero()
        for j in range(6):
            acc = acc + Elt(ctx, M.c[i, j]) * conj[j]
        assert acc == f(x).frob(i)


def test_submatrix_examples():
    ctx = tower_for_q(3)
    M = dickson(LinPoly.random(ctx, np.random.default_rng(1)))
    assert np.array_equal(submatrix_Mr(M, 0).c, M.c)
    assert np.array_equal(submatrix_Mr(M, 5).c, M.c[0:1, 5:6])
    assert submatrix_Mr(M, 1).c.shape[:2] == (5, 5)
    for bad in (-1, 6, 2.0):
        with pytest.raises(BadIndex):
            submatrix_Mr(M, bad)


def test_det_examples():
    ctx = tower_for_q(4)
    assert det(dickson(LinPoly.identity(ctx))) == 1
    rng = np.random.default_rng(3)
    grid = ctx.random(rng, (4, 4))
    grid.c[2] = grid.c[0]
    assert det(grid) == 0
    assert det_is_zero(grid)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_top_right_blocks_of_r_poly(q):
    """Four-row determinants of the Dickson matrix of m x + b x^q + x^(q^4).

    Rows 0..3 against the last four columns give m^(q^2+q^3); the b-only value
    b^(q^2) (N-1)^q comes from rows 0, 1, 2, 4 against the same columns."""
    ctx = tower_for_q(q)
    rng = np.random.default_rng(q)
    for _ in range(10):
        m, b = ctx.random(rng), ctx.random_nonzero(rng)
        N = norm_q6_q3(b)
        M = dickson(r_poly(m, b))
        assert det(submatrix_Mr(M, 2)) == m.frob(2) * m.frob(3)
        rows = Elt(ctx, M.c[np.ix_((0, 1, 2, 4), (2, 3, 4, 5))])
        assert det(rows) == b.frob(2) * (N - 1).frob(1)


def test_det_agrees_with_cofactor_expansion():
    rng = np.random.default_rng(11)
    for q in (2, 3, 4, 5):
        ctx = tower_for_q(q)
        grids = ctx.random(rng, (20, 6, 6))
        # a few singular ones
        grids.c[:5, 5] = grids.c[:5, 0]
        batched = det(grids)
        for i in range(20):
            assert batched[i] == det_cofactor(grids[i])
        assert np.all(np.asarray(det_is_zero(grids)) == np.asarray(batched.is_zero()))


@given(tower_and_elements(n=8, qs=(3, 4, 5, 9)))
def test_det_is_multiplicative_on_2x2(data):
    ctx, *xs = data
    a = ctx.stack(xs[:4])
    b = ctx.stack(xs[4:])
    A, B = Elt(ctx, a.c.reshape(2, 2, -1)), Elt(ctx, b.c.reshape(2, 2, -1))
    prod = ctx.stack(
        [A[i, 0] * B[0, j] + A[i, 1] * B[1, j] for i in range(2) for j in range(2)]
    )
    P = Elt(ctx, prod.c.reshape(2, 2, -1))
    assert det(P) == det(A) * det(B)


def test_kernel_dim_examples():
    ctx = tower_for_q(3)
    ident = LinPoly.identity(ctx)
    frob_minus = LinPoly([ctx.scalar(-1), ctx.one(), 0, 0, 0, 0])
    trace = LinPoly.trace(ctx)
    zero = LinPoly([ctx.zero()] * 6)
    for f, want in ((ident, 0), (frob_minus, 1), (trace, 5), (zero, 6)):
        assert kernel_dim_dickson(f) == want
        assert kernel_dim_brute(f) == want


@pytest.mark.parametrize("q", [2, 3, 4])
def test_kernel_dims_of_subspace_polynomials(q):
    ctx = tower_for_q(q)
    rng = np.random.default_rng(40 + q)
    seen = set()
    for dim in range(7):
        f = poly_with_kernel(ctx, rng, dim)
        k = kernel_dim_brute(f)
        assert kernel_dim_dickson(f) == k
        seen.add(k)
    assert len(seen) >= 5


def test_kernel_dim_batched_matches_scalar():
    ctx = tower_for_q(3)
    rng = np.random.default_rng(8)
    polys = LinPoly.random(ctx, rng, (40,))
    polys.coeffs.c[:20, 2:] = 0  # sparser ones have larger kernels more often
    batched = kernel_dim_dickson(polys)
    for i in range(40):
        assert batched[i] == kernel_dim_dickson(LinPoly(polys.coeffs[i]))


def test_rank_complements_kernel(rng):
    for q in (2, 3):
        ctx = tower_for_q(q)
        for dim in range(7):
            f = poly_with_kernel(ctx, rng, dim)
            assert rank(dickson(f)) == 6 - kernel_dim_brute(f)


def test_brute_guard():
    ctx = tower_for_q(17)
    with pytest.raises(EnumerationTooLarge):
        kernel_dim_brute(LinPoly.identity(ctx))


@given(st.sampled_from([2, 3]), st.integers(0, 2**32))
def test_kernel_criterion_property(q, seed):
    ctx = tower_for_q(q)
    f = LinPoly.random(ctx, np.random.default_rng(seed))
    assert kernel_dim_dickson(f) == kernel_dim_brute(f)
