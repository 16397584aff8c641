"""Generalized PCA construction and its defining identities."""

import numpy as np
import pytest

from conftest import random_spd
from localbiplots import FormError, RankError, gpca, symmetric_sqrt


def test_symmetric_sqrt_identity():
    assert np.array_equal(symmetric_sqrt(np.eye(3)), np.eye(3))


def test_symmetric_sqrt_diagonal():
    s = symmetric_sqrt(np.diag([4.0, 9.0]))
    assert np.allclose(s, np.diag([2.0, 3.0]), atol=1e-12)


def test_symmetric_sqrt_multiply_back(rng):
    for _ in range(10):
        m = random_spd(rng, 6)
        s = symmetric_sqrt(m)
        assert np.array_equal(s, s.T)
        assert np.linalg.norm(s @ s - m) <= 1e-10 * np.linalg.norm(m)


def test_symmetric_sqrt_rejects_non_spd():
    with pytest.raises(FormError):
        symmetric_sqrt(np.diag([1.0, -1.0]))
    with pytest.raises(FormError):
        symmetric_sqrt(np.array([[1.0, 0.5], [0.0, 1.0]]))


def test_gpca_identity_is_pca(rng):
    X = rng.normal(size=(12, 5))
    X -= X.mean(axis=0)
    sol = gpca(X, np.eye(5), k=4, center=False)
    U, S, Vt = np.linalg.svd(X, full_matrices=False)
    for j in range(4):
        sign = np.sign(sol.v[:, j] @ Vt[j])
        assert np.allclose(sign * sol.v[:, j], Vt[j], atol=1e-8)
    assert np.allclose(sol.lam, S[:4] ** 2, atol=1e-8)
    # Scores match U D up to the same per-column sign.
    for j in range(4):
        sign = np.sign(sol.scores[:, j] @ (U[:, j] * S[j]))
        assert np.allclose(sign * sol.scores[:, j], U[:, j] * S[j], atol=1e-8)


def test_gpca_defining_equations(rng):
    for _ in range(10):
        X = rng.normal(size=(10, 6))
        q = random_spd(rng, 6)
        sol = gpca(X, q, k=5, center=False)
        lhs = X.T @ X @ q @ sol.v
        rhs = sol.v * sol.lam
        assert np.abs(lhs - rhs).max() <= 1e-8 * max(1.0, sol.lam[0])
        assert np.abs(sol.v.T @ q @ sol.v - np.eye(5)).max() <= 1e-8


def test_gpca_with_row_weights(rng):
    X = rng.normal(size=(9, 4))
    q = random_spd(rng, 4)
    d = random_spd(rng, 9)
    sol = gpca(X, q, d=d, k=3, center=False)
    lhs = X.T @ d @ X @ q @ sol.v
    rhs = sol.v * sol.lam
    assert np.abs(lhs - rhs).max() <= 1e-8 * max(1.0, sol.lam[0])
    assert np.abs(sol.v.T @ q @ sol.v - np.eye(3)).max() <= 1e-8


def test_gpca_centering_flag(rng):
    X = rng.normal(size=(10, 4)) + 7.0
    q = random_spd(rng, 4)
    sol = gpca(X, q, k=2)
    assert sol.centered
    Xc = X - X.mean(axis=0)
    lhs = Xc.T @ Xc @ q @ sol.v
    assert np.abs(lhs - sol.v * sol.lam).max() <= 1e-8 * max(1.0, sol.lam[0])


def test_gpca_eigenvalues_sorted_nonnegative(rng):
    X = rng.normal(size=(8, 5))
    sol = gpca(X, random_spd(rng, 5), k=4)
    assert np.all(np.diff(sol.lam) <= 1e-12)
    assert np.all(sol.lam >= -1e-10)


def test_gpca_rank_errors(rng):
    X = rng.normal(size=(4, 6))  # rank at most 3 after centering
    q = random_spd(rng, 6)
    with pytest.raises(RankError):
        gpca(X, q, k=6)


def test_gpca_rejects_bad_forms(rng):
    X = rng.normal(size=(6, 3))
    with pytest.raises(FormError):
        gpca(X, np.diag([1.0, 1.0, -1.0]), k=2)
    with pytest.raises(FormError):
        gpca(X, np.eye(3), d=np.diag([1.0, -1.0, 1.0, 1.0, 1.0, 1.0]), k=2)
