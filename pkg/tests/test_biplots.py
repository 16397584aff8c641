"""Local biplot axes in all modes, constancy, and correlation biplots."""

import numpy as np
import pytest

from conftest import random_spd
from localbiplots import (
    DomainError,
    EuclideanDistance,
    FunctionDistance,
    GeneralizedEuclideanDistance,
    GeneralizedForm,
    LbMode,
    ManhattanDistance,
    ModeError,
    ShapeError,
    UnweightedUnifracDistance,
    WeightedUnifracDistance,
    align_column_signs,
    build_balanced_tree,
    classical_mds,
    correlation_biplot,
    cosine_similarity,
    embed_supplemental,
    gpca,
    lb_axes,
    lb_constancy,
    lb_field,
    squared_distance_matrix,
)


def centered(rng, n, p):
    X = rng.normal(size=(n, p))
    return X - X.mean(axis=0)


def euclid_solution(rng, n=12, p=5, k=3):
    X = centered(rng, n, p)
    dist = EuclideanDistance()
    sol = classical_mds(squared_distance_matrix(dist, X), k)
    return X, dist, sol


def test_mode_validation():
    with pytest.raises(ModeError, match="unknown mode"):
        LbMode("sideways")
    with pytest.raises(ModeError, match="epsilon"):
        LbMode("eps_positive")
    with pytest.raises(ModeError, match="epsilon"):
        LbMode("eps_negative", epsilon=-1.0)
    LbMode("eps_positive", epsilon=1.0)


def test_analytic_requires_differentiable(rng):
    X = np.abs(centered(rng, 8, 4)) + 0.1
    dist = ManhattanDistance()
    sol = classical_mds(squared_distance_matrix(dist, X), 2)
    with pytest.raises(ModeError, match="analytic"):
        lb_axes(sol, X, dist, X[0], LbMode("analytic"))


def test_one_sided_rejected_for_discontinuous(rng):
    tree = build_balanced_tree(3)
    X = rng.poisson(0.8, size=(8, 8)).astype(float)
    X[X.sum(axis=1) == 0, 0] = 1.0
    dist = UnweightedUnifracDistance(tree)
    sol = classical_mds(squared_distance_matrix(dist, X), 1)
    with pytest.raises(ModeError, match="eps_positive"):
        lb_axes(sol, X, dist, X[0], LbMode("positive"))
    lb_axes(sol, X, dist, X[0], LbMode("eps_positive", epsilon=1.0))


def test_euclidean_axes_equal_svd_vectors(rng):
    X, dist, sol = euclid_solution(rng)
    _, _, Vt = np.linalg.svd(X, full_matrices=False)
    V = Vt.T[:, :3]
    for _ in range(10):
        z = rng.normal(size=5)
        axes = lb_axes(sol, X, dist, z, LbMode("analytic")).axes
        aligned = align_column_signs(axes, V)
        assert np.abs(aligned - V).max() <= 1e-8


def test_euclidean_axes_constant_anywhere(rng):
    X, dist, sol = euclid_solution(rng)
    points = [rng.normal(size=5) * 10 for _ in range(6)] + [X[0], X[3]]
    field = lb_field(sol, X, dist, points, LbMode("analytic"))
    assert field.ok
    assert lb_constancy(field) <= 1e-8


def test_generalized_axes_equal_qv(rng):
    X = centered(rng, 12, 5)
    q = random_spd(rng, 5)
    dist = GeneralizedEuclideanDistance(GeneralizedForm(q))
    sol = classical_mds(squared_distance_matrix(dist, X), 3)
    g = gpca(X, q, k=3, center=False)
    qv = q @ g.v
    field = lb_field(sol, X, dist, [rng.normal(size=5) for _ in range(10)], LbMode("analytic"))
    assert lb_constancy(field) <= 1e-8
    for m in field.successful():
        aligned = align_column_signs(m.axes, qv)
        assert np.abs(aligned - qv).max() <= 1e-8


def test_constant_axes_recover_form(rng):
    # Full-dimensional case: LB LB' equals Q, so the implied generalized
    # Euclidean distance reproduces d_Q on data-by-query pairs.
    n, p = 12, 4
    X = centered(rng, n, p)
    q = random_spd(rng, p)
    dist = GeneralizedEuclideanDistance(GeneralizedForm(q))
    sol = classical_mds(squared_distance_matrix(dist, X), p)
    lb = lb_axes(sol, X, dist, rng.normal(size=p), LbMode("analytic")).axes
    assert np.abs(lb @ lb.T - q).max() <= 1e-8 * max(1.0, np.abs(q).max())


def test_jacobian_consistency_fd(rng):
    # Analytic axes match central differences of the supplemental map.
    q = random_spd(rng, 4)
    cases = [
        (EuclideanDistance(), centered(rng, 10, 4)),
        (GeneralizedEuclideanDistance(GeneralizedForm(q)), centered(rng, 10, 4)),
    ]
    for dist, X in cases:
        sol = classical_mds(squared_distance_matrix(dist, X), 2)
        for _ in range(20):
            z = rng.normal(size=4)
            axes = lb_axes(sol, X, dist, z, LbMode("analytic")).axes
            fd = np.zeros_like(axes)
            h = 1e-6
            for j in range(4):
                zp, zm = z.copy(), z.copy()
                zp[j] += h
                zm[j] -= h
                fd[j] = (
                    embed_supplemental(sol, X, dist, zp)
                    - embed_supplemental(sol, X, dist, zm)
                ) / (2 * h)
            assert np.abs(axes - fd).max() <= max(1e-6, 10 * h**2)


def test_fd_fallback_for_closed_form_less_differentiable(rng):
    # A smooth custom distance exercises the finite-difference gradient path.
    X = centered(rng, 9, 3)
    smooth = FunctionDistance(
        lambda x, y: float(np.sqrt(np.sum((x - y) ** 2) + 1.0) - 1.0),
        kind="smoothed_euclidean",
        smoothness="differentiable",
    )
    sol = classical_mds(squared_distance_matrix(smooth, X), 2)
    z = rng.normal(size=3)
    axes = lb_axes(sol, X, smooth, z, LbMode("analytic")).axes
    assert axes.shape == (3, 2)
    assert np.isfinite(axes).all()


def test_eps_modes_converge_to_analytic(rng):
    X, dist, sol = euclid_solution(rng)
    z = rng.normal(size=5)
    ana = lb_axes(sol, X, dist, z, LbMode("analytic")).axes
    prev = None
    for eps in (1e-2, 1e-3, 1e-4):
        for variant in ("eps_positive", "eps_negative"):
            err = np.linalg.norm(
                lb_axes(sol, X, dist, z, LbMode(variant, epsilon=eps)).axes - ana
            )
            assert err <= 10 * eps * max(1.0, np.linalg.norm(ana))
        if prev is not None:
            assert err < prev
        prev = err


def test_one_sided_modes_match_analytic_for_smooth(rng):
    X, dist, sol = euclid_solution(rng)
    z = rng.normal(size=5)
    ana = lb_axes(sol, X, dist, z, LbMode("analytic")).axes
    pos = lb_axes(sol, X, dist, z, LbMode("positive")).axes
    neg = lb_axes(sol, X, dist, z, LbMode("negative")).axes
    assert np.abs(pos - ana).max() <= 1e-5
    assert np.abs(neg - ana).max() <= 1e-5


def test_eps_negative_domain_error_names_variable(rng):
    tree = build_balanced_tree(3)
    X = rng.poisson(3.0, size=(8, 8)).astype(float) + 1.0
    dist = WeightedUnifracDistance(tree)
    sol = classical_mds(squared_distance_matrix(dist, X), 2)
    z = X[0].copy()
    z[5] = 0.0
    with pytest.raises(DomainError, match="variable index 5"):
        lb_axes(sol, X, dist, z, LbMode("eps_negative", epsilon=1.0))


def test_lb_field_collects_partial_errors(rng):
    tree = build_balanced_tree(3)
    X = rng.poisson(3.0, size=(8, 8)).astype(float) + 1.0
    dist = WeightedUnifracDistance(tree)
    sol = classical_mds(squared_distance_matrix(dist, X), 2)
    bad = X[0].copy()
    bad[2] = 0.0
    field = lb_field(sol, X, dist, [X[0], bad, X[1]], LbMode("eps_negative", epsilon=1.0))
    assert len(field.matrices) == 3
    assert field.matrices[1] is None
    assert [i for i, _ in field.errors] == [1]
    assert len(field.successful()) == 2


def test_lb_field_empty_points(rng):
    X, dist, sol = euclid_solution(rng)
    field = lb_field(sol, X, dist, [], LbMode("analytic"))
    assert field.matrices == [] and field.errors == []


def test_constancy_values(rng):
    a = rng.normal(size=(4, 2))
    assert lb_constancy([a, a.copy(), a.copy()]) == 0.0
    assert lb_constancy([a, 2 * a]) == pytest.approx(0.5, abs=1e-12)
    assert lb_constancy([np.zeros((3, 2)), np.zeros((3, 2))]) == 0.0
    with pytest.raises(ShapeError):
        lb_constancy([])
    with pytest.raises(ShapeError):
        lb_constancy([a, rng.normal(size=(5, 2))])


def test_correlation_biplot_self_and_constant(rng):
    X, dist, sol = euclid_solution(rng, n=14, p=4, k=2)
    # Make one data column equal to the first embedding column, one constant.
    X2 = X.copy()
    X2[:, 1] = sol.m_embed[:, 0]
    X2[:, 3] = 2.5
    result = correlation_biplot(X2, sol)
    assert result.matrix.shape == (4, 2)
    assert result.matrix[1, 0] == pytest.approx(1.0, abs=1e-12)
    assert result.constant_columns == [3]
    assert np.array_equal(result.matrix[3], np.zeros(2))
    assert np.all(result.matrix <= 1.0) and np.all(result.matrix >= -1.0)


def test_correlation_biplot_needs_two_samples(rng):
    X, dist, sol = euclid_solution(rng)
    with pytest.raises(ShapeError):
        correlation_biplot(X[:1], sol)


def test_align_and_cosine(rng):
    a = rng.normal(size=(6, 2))
    flipped = a * np.array([-1.0, 1.0])
    aligned = align_column_signs(flipped, a)
    assert np.allclose(aligned, a)
    assert cosine_similarity(a, a) == pytest.approx(1.0)
    assert cosine_similarity(a, -a) == pytest.approx(-1.0)
    assert cosine_similarity(np.zeros((2, 2)), a[:2]) == 0.0
