"""Generalized PCA of a triple (X, Q, D).

The axes V satisfy X'DXQV = V diag(lambda) with V'QV = I.  They are computed
through the symmetric square root of Q: eigendecompose Q^(1/2) X'DX Q^(1/2)
and map the eigenvectors back with Q^(-1/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distances import PD_TOL, GeneralizedForm
from .errors import FormError, NumericError, RankError, ShapeError

# Eigenvalues below this fraction of the largest are treated as null rank.
GPCA_EIG_TOL = 1e-12


def _spd_eig(m: np.ndarray, what: str) -> tuple[np.ndarray, np.ndarray]:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"{what} must be square, got {m.shape}")
    if not np.allclose(m, m.T, rtol=0.0, atol=1e-12):
        raise FormError(f"{what} must be symmetric")
    w, u = np.linalg.eigh((m + m.T) / 2.0)
    if w[-1] <= 0 or w[0] <= PD_TOL * w[-1]:
        raise FormError(f"{what} is not positive definite (min eigenvalue {w[0]:.3e})")
    return w, u


def symmetric_sqrt(m) -> np.ndarray:
    """The symmetric square root S of an SPD matrix, S @ S = m."""
    w, u = _spd_eig(m, "matrix")
    s = (u * np.sqrt(w)) @ u.T
    return (s + s.T) / 2.0


@dataclass(frozen=True, eq=False)
class GpcaSolution:
    """Normalized generalized principal axes and scores.

    v: p x k axes (V'QV = I); lam: the k leading eigenvalues, non-increasing;
    scores: n x k sample scores XQV; q/d are the inner-product matrices used.
    Centering, when applied, happened before everything else.
    """

    v: np.ndarray
    lam: np.ndarray
    scores: np.ndarray
    q: np.ndarray
    d: np.ndarray
    centered: bool

    @property
    def k(self) -> int:
        return self.lam.shape[0]


def gpca(
    X,
    q: GeneralizedForm | np.ndarray,
    d: np.ndarray | None = None,
    k: int | None = None,
    center: bool = True,
) -> GpcaSolution:
    """Generalized PCA of (X, Q, D); D defaults to the identity.

    k defaults to the count of eigenvalues above GPCA_EIG_TOL relative to the
    largest.  Columns of X are mean-centered first unless center=False.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ShapeError(f"data must be 2-D, got shape {X.shape}")
    n, p = X.shape
    if isinstance(q, GeneralizedForm):
        q_mat = q.matrix
    else:
        q_mat = GeneralizedForm(np.asarray(q)).matrix
    if q_mat.shape[0] != p:
        raise ShapeError(f"q is {q_mat.shape[0]}x{q_mat.shape[0]} but data has {p} columns")
    if d is None:
        d_mat = np.eye(n)
    else:
        _spd_eig(d, "row-weight matrix d")
        d_mat = np.asarray(d, dtype=np.float64)
        if d_mat.shape[0] != n:
            raise ShapeError(f"d is {d_mat.shape[0]}x{d_mat.shape[0]} but data has {n} rows")

    Xc = X - X.mean(axis=0) if center else X

    wq, uq = _spd_eig(q_mat, "form matrix q")
    q_half = (uq * np.sqrt(wq)) @ uq.T
    q_half_inv = (uq / np.sqrt(wq)) @ uq.T

    core = q_half @ Xc.T @ d_mat @ Xc @ q_half
    core = (core + core.T) / 2.0
    try:
        w, vt = np.linalg.eigh(core)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    order = np.argsort(w)[::-1]
    w = w[order]
    vt = vt[:, order]

    lam_max = w[0] if w.size else 0.0
    if lam_max <= 0:
        raise RankError("data matrix has rank zero after centering")
    available = int(np.count_nonzero(w > GPCA_EIG_TOL * lam_max))
    if k is None:
        k = available
    if k < 1 or k > available:
        raise RankError(f"k={k} outside the available rank {available}")

    v = q_half_inv @ vt[:, :k]
    # Deterministic orientation on the output axes (sign is arbitrary).
    for j in range(k):
        i = int(np.argmax(np.abs(v[:, j])))
        if v[i, j] < 0:
            v[:, j] = -v[:, j]
    lam = w[:k]
    scores = Xc @ q_mat @ v
    return GpcaSolution(v=v, lam=lam, scores=scores, q=q_mat, d=d_mat, centered=center)
