"""Classical multi-dimensional scaling and supplemental-point embedding.

The pipeline is: squared distances -> double centering -> symmetric
eigendecomposition -> embedding from the top-k eigenpairs.  A supplemental
point z is placed into the *fixed* embedding through the add-a-point map
    f(z) = 1/2 diag(lambda_1..k)^-1 M' a,   a_i = g_ii - d(x_i, z)^2,
which leaves the original sample positions untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distances import Distance
from .errors import NumericError, RankError, ShapeError

# Eigenvalues below EIG_TOL * lambda_max count as null directions: they are
# excluded from the retained basis (the map divides by lambda).
EIG_TOL = 1e-9


@dataclass(frozen=True)
class InertiaReport:
    """Eigenvalue mass accounting: total positive, total |negative|, and the
    absolute mass excluded from the retained basis."""

    positive: float
    negative: float
    discarded: float


@dataclass(frozen=True, eq=False)
class MdsSolution:
    """Eigensystem of the doubly-centered squared-distance matrix.

    b: n x m orthonormal eigenvectors (all retained columns, descending);
    lam: the m retained eigenvalues; m_embed: n x k embedding using the first
    k columns scaled by sqrt(lambda); gram_diag: diagonal of the Gram matrix
    (needed by the supplemental map); inertia: mass report.
    """

    b: np.ndarray
    lam: np.ndarray
    m_embed: np.ndarray
    gram_diag: np.ndarray
    k: int
    inertia: InertiaReport

    @property
    def n(self) -> int:
        return self.b.shape[0]

    @property
    def retained(self) -> int:
        return self.lam.shape[0]


def _check_delta(delta: np.ndarray) -> np.ndarray:
    delta = np.asarray(delta, dtype=np.float64)
    if delta.ndim != 2 or delta.shape[0] != delta.shape[1]:
        raise ShapeError(f"squared-distance matrix must be square, got {delta.shape}")
    if not np.allclose(delta, delta.T, rtol=0.0, atol=1e-12):
        raise ShapeError("squared-distance matrix must be symmetric")
    if np.any(np.diag(delta) != 0.0):
        raise ShapeError("squared-distance matrix must have a zero diagonal")
    if np.any(delta < 0):
        raise ShapeError("squared distances must be non-negative")
    return delta


def double_center(delta) -> np.ndarray:
    """Gram matrix -1/2 C delta C' with C = I - 11'/n; symmetrised exactly."""
    delta = _check_delta(delta)
    n = delta.shape[0]
    row_means = delta.mean(axis=1, keepdims=True)
    col_means = delta.mean(axis=0, keepdims=True)
    grand = delta.mean()
    g = -0.5 * (delta - row_means - col_means + grand)
    return (g + g.T) / 2.0


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Deterministic eigenvector orientation: largest-|entry| made positive."""
    out = vectors.copy()
    for j in range(out.shape[1]):
        i = int(np.argmax(np.abs(out[:, j])))
        if out[i, j] < 0:
            out[:, j] = -out[:, j]
    return out


def classical_mds(delta, k: int) -> MdsSolution:
    """Classical scaling of a squared-distance matrix, keeping k dimensions.

    Eigenpairs with eigenvalue <= EIG_TOL * lambda_max (including all negative
    ones, which arise for non-Euclidean-embeddable distances) are dropped from
    the basis; their absolute mass is tallied in the inertia report.
    """
    if k < 1:
        raise RankError(f"k must be a positive integer, got {k}")
    g = double_center(delta)
    try:
        w, v = np.linalg.eigh(g)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    order = np.argsort(w)[::-1]
    w = w[order]
    v = v[:, order]

    lam_max = w[0] if w.size else 0.0
    if lam_max <= 0:
        raise RankError("no positive eigenvalues: all points coincide")
    tol = EIG_TOL * lam_max
    keep = w > tol
    m = int(np.count_nonzero(keep))
    if k > m:
        raise RankError(f"k={k} exceeds retained rank {m}")

    positive = float(w[w > 0].sum())
    negative = float(np.abs(w[w < 0]).sum())
    discarded = float(w[(w > 0) & ~keep].sum()) + negative

    b = _fix_signs(v[:, keep])
    lam = w[keep]
    m_embed = b[:, :k] * np.sqrt(lam[:k])
    return MdsSolution(
        b=b,
        lam=lam,
        m_embed=m_embed,
        gram_diag=np.diag(g).copy(),
        k=k,
        inertia=InertiaReport(positive=positive, negative=negative, discarded=discarded),
    )


def supplemental_vector(sol: MdsSolution, X: np.ndarray, dist: Distance, z) -> np.ndarray:
    """The vector a with a_i = g_ii - d(x_i, z)^2."""
    X = np.asarray(X, dtype=np.float64)
    if X.shape[0] != sol.n:
        raise ShapeError(f"data has {X.shape[0]} rows but solution was built from {sol.n}")
    d = dist.to_points(X, np.asarray(z, dtype=np.float64))
    return sol.gram_diag - d**2


def embed_supplemental(sol: MdsSolution, X: np.ndarray, dist: Distance, z) -> np.ndarray:
    """Place z into the fixed embedding: 1/2 lambda^-1 M' a, a k-vector."""
    a = supplemental_vector(sol, X, dist, z)
    return 0.5 * (sol.m_embed.T @ a) / sol.lam[: sol.k]
