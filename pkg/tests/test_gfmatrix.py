import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from coltrs.galois import field_new
from coltrs.gfmatrix import (
    GFMatrix,
    MatrixError,
    det,
    from_csv,
    from_json,
    hstack,
    mat_mul,
    nullspace,
    rank,
    rref,
    rref_with_pivots,
    row_space_equal,
    solve,
    submatrix,
    to_csv,
    to_json,
    transpose,
    vstack,
)

FIELDS = [(7, 1), (29, 1), (2, 4), (3, 3), (5, 2)]


def _perm_sign(perm):
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz(F, rows):
    """Determinant straight from the permutation expansion."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i in range(n):
            term = F.mul(term, rows[i][perm[i]])
        total = F.add(total, term if _perm_sign(perm) > 0 else F.neg(term))
    return total


def rand_matrix(F, r, c, rng, sparsity=0.0):
    return GFMatrix.from_rows(F, [[0 if rng.random() < sparsity else rng.randrange(F.q)
                                   for _ in range(c)] for _ in range(r)], cols=c)


@pytest.mark.parametrize("p,m", FIELDS)
def test_det_matches_leibniz(p, m, rng):
    F = field_new(p, m)
    for _ in range(60):
        n = rng.randint(1, 5)
        M = rand_matrix(F, n, n, rng, sparsity=rng.choice([0.0, 0.4, 0.7]))
        assert det(M).value == leibniz(F, M.entries)


@pytest.mark.parametrize("p,m", FIELDS)
def test_det_multiplicative(p, m, rng):
    F = field_new(p, m)
    for _ in range(40):
        n = rng.randint(1, 5)
        A, B = rand_matrix(F, n, n, rng), rand_matrix(F, n, n, rng)
        assert det(mat_mul(A, B)) == det(A) * det(B)


def test_rank_nullity_and_null_vectors(rng):
    for t in range(200):
        p, m = FIELDS[t % len(FIELDS)]
        F = field_new(p, m)
        r, c = rng.randint(1, 6), rng.randint(1, 8)
        M = rand_matrix(F, r, c, rng, sparsity=rng.choice([0.0, 0.5, 0.8]))
        N = nullspace(M)
        assert rank(M) + N.rows == c
        assert rank(N) == N.rows
        if N.rows:
            assert mat_mul(M, transpose(N)).is_zero()


def test_rref_shape(rng):
    F = field_new(29)
    for _ in range(50):
        M = rand_matrix(F, 4, 7, rng, sparsity=0.5)
        R, piv = rref_with_pivots(M)
        assert piv == sorted(piv)
        for i, pc in enumerate(piv):
            assert R.entries[i][pc] == 1
            assert all(R.entries[j][pc] == 0 for j in range(R.rows) if j != i)
        assert all(v == 0 for row in R.entries[len(piv):] for v in row)
        assert row_space_equal(M, R)


def test_row_space_invariant_under_row_ops(rng):
    F = field_new(3, 3)
    for _ in range(30):
        M = rand_matrix(F, 3, 6, rng)
        T = rand_matrix(F, 3, 3, rng)
        if det(T).value == 0:
            continue
        assert row_space_equal(M, mat_mul(T, M))


def test_solve(rng):
    F = field_new(2, 4)
    for _ in range(30):
        M = rand_matrix(F, 4, 4, rng)
        x = [rng.randrange(16) for _ in range(4)]
        rhs = [row[0] for row in mat_mul(M, transpose(GFMatrix.from_rows(F, [x]))).entries]
        if det(M).value:
            assert solve(M, rhs) == x
        else:
            with pytest.raises(MatrixError):
                solve(M, rhs)


def test_identity_and_stacking():
    F = field_new(7)
    I = GFMatrix.identity(F, 3)
    assert det(I).value == 1
    Z = GFMatrix.zeros(F, 3, 2)
    S = hstack(I, Z)
    assert S.shape == (3, 5)
    assert vstack(S, S).shape == (6, 5)
    assert submatrix(S, cols=[0, 1, 2]) == I
    with pytest.raises(MatrixError):
        mat_mul(I, Z.__class__.zeros(F, 2, 2))
    with pytest.raises(MatrixError):
        det(Z)


def test_mixed_fields_rejected():
    with pytest.raises(MatrixError):
        mat_mul(GFMatrix.identity(field_new(7), 2), GFMatrix.identity(field_new(11), 2))


def test_ragged_rows_rejected():
    with pytest.raises(MatrixError):
        GFMatrix.from_rows(field_new(7), [[1, 2], [3]])


@pytest.mark.parametrize("p,m", FIELDS + [(2, 6)])
def test_file_round_trips(p, m, rng):
    F = field_new(p, m)
    M = rand_matrix(F, 3, 5, rng)
    assert from_csv(to_csv(M)) == M
    assert from_json(to_json(M)) == M


def test_csv_header_required():
    with pytest.raises(MatrixError):
        from_csv("1,2\n3,4\n")
    with pytest.raises(MatrixError):
        from_csv("# GF(7^1)/-/3 3x2\n1,2\n3,4\n")


small = st.integers(min_value=0, max_value=6)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rref_idempotent_gf7(rows):
    M = GFMatrix.from_rows(field_new(7), rows)
    R = rref(M)
    assert rref(R) == R
    assert rank(M) == rank(transpose(M))
