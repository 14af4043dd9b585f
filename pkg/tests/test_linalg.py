import numpy as np
import pytest

from mvopt import (
    NoConvergenceError,
    NotPositiveDefiniteError,
    spd_inverse,
    spd_solve,
    sym_eigen,
)


def random_spd(rng, order):
    g = rng.normal(size=(order, order))
    m = g @ g.T + 1e-6 * np.eye(order)
    return (m + m.T) / 2.0


class TestSpdSolve:
    def test_identity(self):
        x = spd_solve(np.eye(3), np.array([1.0, 2.0, 3.0]))
        np.testing.assert_allclose(x, [1.0, 2.0, 3.0], rtol=0, atol=0)

    def test_diagonal(self):
        x = spd_solve(np.diag([2.0, 4.0]), np.array([2.0, 4.0]))
        np.testing.assert_allclose(x, [1.0, 1.0], rtol=1e-15)

    def test_dense_2x2(self):
        m = np.array([[2.0, 1.0], [1.0, 2.0]])
        rhs = np.array([3.0, 3.0])
        x = spd_solve(m, rhs)
        np.testing.assert_allclose(x, [1.0, 1.0], atol=1e-14)
        # multiply-back residual is the real contract
        np.testing.assert_allclose(m @ x, rhs, rtol=1e-9)

    def test_matrix_rhs(self):
        m = np.array([[2.0, 1.0], [1.0, 2.0]])
        rhs = np.array([[3.0, 2.0], [3.0, 1.0]])
        x = spd_solve(m, rhs)
        np.testing.assert_allclose(m @ x, rhs, atol=1e-12)

    def test_singular_raises(self):
        with pytest.raises(NotPositiveDefiniteError):
            spd_solve(np.array([[1.0, 1.0], [1.0, 1.0]]), np.array([1.0, 1.0]))

    def test_indefinite_raises(self):
        with pytest.raises(NotPositiveDefiniteError) as info:
            spd_solve(np.array([[1.0, 0.0], [0.0, -1.0]]), np.array([1.0, 1.0]))
        assert info.value.pivot_index == 1

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            spd_solve(np.array([[1.0, 0.1], [0.2, 1.0]]), np.array([1.0, 1.0]))

    def test_random_spd_residuals(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            order = int(rng.integers(1, 21))
            m = random_spd(rng, order)
            rhs = rng.normal(size=order)
            x = spd_solve(m, rhs)
            residual = np.max(np.abs(m @ x - rhs))
            assert residual <= 1e-9 * max(np.max(np.abs(rhs)), 1e-300)


class TestSpdInverse:
    def test_diagonal(self):
        np.testing.assert_allclose(
            spd_inverse(np.diag([2.0, 5.0])), np.diag([0.5, 0.2]), atol=1e-15
        )

    def test_identity(self):
        np.testing.assert_allclose(spd_inverse(np.eye(4)), np.eye(4), atol=0)

    def test_dense_2x2(self):
        inv = spd_inverse(np.array([[2.0, 1.0], [1.0, 2.0]]))
        expected = np.array([[2.0, -1.0], [-1.0, 2.0]]) / 3.0
        np.testing.assert_allclose(inv, expected, atol=1e-15)

    def test_multiply_back(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            m = random_spd(rng, int(rng.integers(2, 15)))
            err = np.max(np.abs(m @ spd_inverse(m) - np.eye(m.shape[0])))
            assert err <= 1e-8

    def test_involution(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            m = random_spd(rng, int(rng.integers(2, 15)))
            back = spd_inverse(spd_inverse(m))
            assert np.max(np.abs(back - m)) <= 1e-7 * np.max(np.abs(m))

    def test_result_exactly_symmetric(self):
        rng = np.random.default_rng(17)
        inv = spd_inverse(random_spd(rng, 8))
        assert np.array_equal(inv, inv.T)


class TestSymEigen:
    def test_identity(self):
        values, vectors = sym_eigen(np.eye(2))
        np.testing.assert_allclose(values, [1.0, 1.0], atol=0)
        np.testing.assert_allclose(vectors, np.eye(2), atol=0)

    def test_diagonal(self):
        values, vectors = sym_eigen(np.array([[2.0, 0.0], [0.0, 1.0]]))
        np.testing.assert_allclose(values, [2.0, 1.0], atol=0)
        np.testing.assert_allclose(vectors, np.eye(2), atol=0)

    def test_2x2_closed_form(self):
        values, vectors = sym_eigen(np.array([[1.0, 0.5], [0.5, 1.0]]))
        np.testing.assert_allclose(values, [1.5, 0.5], atol=1e-15)
        invsq = 1.0 / np.sqrt(2.0)
        # sign canon: the first of the tied largest-magnitude entries is positive
        np.testing.assert_allclose(vectors[:, 0], [invsq, invsq], atol=1e-15)
        np.testing.assert_allclose(vectors[:, 1], [invsq, -invsq], atol=1e-15)

    def test_no_convergence_budget(self):
        with pytest.raises(NoConvergenceError):
            sym_eigen(np.array([[1.0, 0.5], [0.5, 1.0]]), max_sweeps=0)

    def test_random_reconstruction(self):
        rng = np.random.default_rng(23)
        for _ in range(1000):
            order = int(rng.integers(1, 13))
            a = rng.normal(size=(order, order))
            a = (a + a.T) / 2.0
            values, vectors = sym_eigen(a)
            assert np.all(np.diff(values) <= 0.0)
            ortho = np.max(np.abs(vectors.T @ vectors - np.eye(order)))
            assert ortho <= 1e-10
            recon = np.max(np.abs(vectors @ np.diag(values) @ vectors.T - a))
            assert recon <= 1e-8

    def test_sign_canonicalization(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            a = rng.normal(size=(6, 6))
            a = (a + a.T) / 2.0
            _, vectors = sym_eigen(a)
            for k in range(6):
                column = vectors[:, k]
                assert column[np.argmax(np.abs(column))] > 0.0

    def test_scale_invariance_of_convergence(self):
        # convergence threshold is relative, so huge scales still work
        a = np.array([[1.0, 0.5], [0.5, 1.0]]) * 1e12
        values, _ = sym_eigen(a)
        np.testing.assert_allclose(values, [1.5e12, 0.5e12], rtol=1e-12)
