# Copyright (c) 2026 The G4S Authors
# SPDX-License-Identifier: Apache-2.0
import numpy as np
import pytest
import scipy.sparse as sparse

import g4s

RNG = np.random.default_rng(1234)


def random_sparse(rows, cols, density=0.2, complex_values=False):
    m = sparse.random(rows, cols, density=density, random_state=17, format="coo")
    if complex_values:
        m = m.astype(np.complex128)
        m.data += 1j * RNG.standard_normal(m.nnz)
    return m


def test_mv_matches_numpy():
    a = random_sparse(30, 30)
    x = RNG.standard_normal(30)
    got = g4s.mv(a, x)
    np.testing.assert_allclose(got, a.toarray() @ x, rtol=1e-12, atol=1e-12)


def test_mv_accepts_dense_input():
    a = RNG.standard_normal((8, 8))
    a[np.abs(a) < 0.7] = 0.0
    x = RNG.standard_normal(8)
    np.testing.assert_allclose(g4s.mv(a, x), a @ x, rtol=1e-12, atol=1e-12)


def test_mv_complex():
    a = random_sparse(16, 16, complex_values=True)
    x = RNG.standard_normal(16) + 1j * RNG.standard_normal(16)
    np.testing.assert_allclose(g4s.mv(a, x), a.toarray() @ x, rtol=1e-12, atol=1e-12)


def test_add_matches_numpy():
    a = random_sparse(20, 20)
    b = sparse.random(20, 20, density=0.2, random_state=18, format="coo")
    got = g4s.add(a, b)
    np.testing.assert_allclose(got.toarray(), (a + b).toarray(),
                               rtol=1e-12, atol=1e-12)


def test_add_drops_exact_cancellations():
    a = sparse.coo_matrix(([1.5, 2.0], ([0, 1], [1, 0])), shape=(2, 2))
    b = sparse.coo_matrix(([-1.5], ([0], [1])), shape=(2, 2))
    got = g4s.add(a, b)
    assert got.nnz == 1
    np.testing.assert_allclose(got.toarray(), [[0.0, 0.0], [2.0, 0.0]])


def test_mm_matches_numpy():
    a = random_sparse(24, 24)
    b = RNG.standard_normal((24, 5))
    np.testing.assert_allclose(g4s.mm(a, b), a.toarray() @ b,
                               rtol=1e-12, atol=1e-12)


def test_compose_matches_numpy():
    a = random_sparse(12, 20)
    b = random_sparse(20, 9)
    got = g4s.compose(a, b)
    assert got.shape == (12, 9)
    np.testing.assert_allclose(got.toarray(), a.toarray() @ b.toarray(),
                               rtol=1e-12, atol=1e-12)


def test_rank1_matches_numpy():
    a = random_sparse(10, 10)
    u = RNG.standard_normal(10)
    w = RNG.standard_normal(10)
    got = g4s.rank1(a, u, w)
    np.testing.assert_allclose(got.toarray(), a.toarray() + np.outer(u, w),
                               rtol=1e-12, atol=1e-12)


def test_rank1_conjugate():
    a = random_sparse(8, 8, complex_values=True)
    u = RNG.standard_normal(8) + 1j * RNG.standard_normal(8)
    w = RNG.standard_normal(8) + 1j * RNG.standard_normal(8)
    got = g4s.rank1(a, u, w, conjugate=True)
    np.testing.assert_allclose(got.toarray(), a.toarray() + np.outer(u, np.conj(w)),
                               rtol=1e-12, atol=1e-12)


def test_duplicate_coordinates_are_coalesced():
    a = sparse.coo_matrix(([1.0, 2.0], ([0, 0], [0, 0])), shape=(2, 2))
    x = np.array([1.0, 1.0])
    np.testing.assert_allclose(g4s.mv(a, x), [3.0, 0.0])


def test_transform_stats():
    a = sparse.coo_matrix(([2.0, 3.0], ([0, 1], [1, 0])), shape=(2, 3))
    vertices, edges = g4s.transform_stats(a)
    assert vertices == 3  # max(rows, cols)
    assert edges == 2


def test_dimension_mismatch_raises():
    a = random_sparse(6, 6)
    with pytest.raises(ValueError):
        g4s.mv(a, np.ones(7))


def test_verify_codec_suite():
    assert g4s.verify("codec", seed=11)
