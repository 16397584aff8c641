"""Distance functions used throughout the package.

Each distance exposes point-pair evaluation (``eval``), vectorised distances
from every data row to one query point (``to_points``), and a full squared
distance matrix (via :func:`squared_distance_matrix`).  The ``smoothness``
attribute drives which local-biplot modes are legal.

The UniFrac evaluators intentionally use two routes: ``eval`` walks branches
one at a time (the textbook sum), while ``to_points`` uses the incidence
matrix product.  Tests compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FormError, ShapeError
from .tree import BranchIncidence, PhyloTree, branch_incidence

DIFFERENTIABLE = "differentiable"
CONTINUOUS_NONSMOOTH = "continuous_nonsmooth"
DISCONTINUOUS = "discontinuous"

# Relative positive-definiteness tolerance: eigenvalues below this fraction of
# the largest one fail the SPD check.
PD_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GeneralizedForm:
    """A symmetric positive-definite p-by-p matrix defining an inner product."""

    matrix: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.matrix, dtype=np.float64)
        object.__setattr__(self, "matrix", q)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ShapeError(f"form matrix must be square, got {q.shape}")
        if not np.array_equal(q, q.T):
            raise FormError("form matrix must be exactly symmetric as stored")
        w = np.linalg.eigvalsh(q)
        if w[-1] <= 0 or w[0] <= PD_TOL * w[-1]:
            raise FormError(
                f"form matrix is not positive definite (eigenvalue range [{w[0]:.3e}, {w[-1]:.3e}])"
            )

    @property
    def p(self) -> int:
        return self.matrix.shape[0]


def _as_vector(x, p: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ShapeError(f"expected a vector, got shape {v.shape}")
    if p is not None and v.shape[0] != p:
        raise ShapeError(f"expected length {p}, got {v.shape[0]}")
    return v


class Distance:
    """Base distance: subclasses fill in kind, smoothness and the evaluators."""

    kind = "abstract"
    smoothness = DIFFERENTIABLE

    def validate_point(self, z: np.ndarray, context: str = "") -> None:
        """Raise DomainError if z is outside the distance's domain."""

    def eval(self, x, y) -> float:
        x = _as_vector(x)
        y = _as_vector(y, x.shape[0])
        self.validate_point(x)
        self.validate_point(y)
        if np.array_equal(x, y):
            return 0.0
        return self._eval(x, y)

    def _eval(self, x: np.ndarray, y: np.ndarray) -> float:
        raise NotImplementedError

    def to_points(self, X: np.ndarray, z) -> np.ndarray:
        """d(x_i, z) for every row x_i of X."""
        X = np.asarray(X, dtype=np.float64)
        z = _as_vector(z, X.shape[1])
        self.validate_point(z)
        for i in range(X.shape[0]):
            self.validate_point(X[i], context=f"row {i}")
        return self._to_points(X, z)

    def _to_points(self, X: np.ndarray, z: np.ndarray) -> np.ndarray:
        return np.array([self._eval(X[i], z) for i in range(X.shape[0])])

    def grad_sq(self, X: np.ndarray, z: np.ndarray):
        """Closed-form p-by-n matrix of d/dz_j of d(x_i, z)^2, or None."""
        return None

    def params(self) -> dict:
        return {}


class EuclideanDistance(Distance):
    kind = "euclidean"
    smoothness = DIFFERENTIABLE

    def _eval(self, x, y):
        return float(np.sqrt(np.sum((x - y) ** 2)))

    def _to_points(self, X, z):
        return np.sqrt(np.sum((X - z) ** 2, axis=1))

    def grad_sq(self, X, z):
        return 2.0 * (z[:, None] - X.T)


class GeneralizedEuclideanDistance(Distance):
    """Mahalanobis-type distance sqrt((x-y)' Q (x-y)) for SPD Q."""

    kind = "generalized_euclidean"
    smoothness = DIFFERENTIABLE

    def __init__(self, form: GeneralizedForm):
        if not isinstance(form, GeneralizedForm):
            form = GeneralizedForm(np.asarray(form))
        self.form = form

    def _eval(self, x, y):
        if x.shape[0] != self.form.p:
            raise ShapeError(f"point length {x.shape[0]} != form size {self.form.p}")
        w = x - y
        return float(np.sqrt(max(w @ self.form.matrix @ w, 0.0)))

    def _to_points(self, X, z):
        if X.shape[1] != self.form.p:
            raise ShapeError(f"data width {X.shape[1]} != form size {self.form.p}")
        W = X - z
        sq = np.einsum("ij,jk,ik->i", W, self.form.matrix, W)
        return np.sqrt(np.maximum(sq, 0.0))

    def grad_sq(self, X, z):
        return 2.0 * self.form.matrix @ (z[:, None] - X.T)

    def params(self):
        return {"q_shape": list(self.form.matrix.shape)}


class ManhattanDistance(Distance):
    kind = "manhattan"
    smoothness = CONTINUOUS_NONSMOOTH

    def _eval(self, x, y):
        return float(np.sum(np.abs(x - y)))

    def _to_points(self, X, z):
        return np.sum(np.abs(X - z), axis=1)


class _UnifracBase(Distance):
    def __init__(self, tree: PhyloTree):
        self.tree = tree
        self.incidence: BranchIncidence = branch_incidence(tree)

    def validate_point(self, z, context=""):
        where = f" ({context})" if context else ""
        if z.shape[0] != self.tree.n_tips:
            raise ShapeError(
                f"point length {z.shape[0]} != number of tips {self.tree.n_tips}{where}"
            )
        neg = np.flatnonzero(z < 0)
        if neg.size:
            raise DomainError(
                f"UniFrac input has negative entry at variable index {neg[0]}{where}"
            )
        if not np.any(z > 0):
            raise DomainError(f"UniFrac input is all zero{where}")

    def params(self):
        return {"n_tips": self.tree.n_tips, "n_branches": self.tree.n_branches}


class WeightedUnifracDistance(_UnifracBase):
    """Sum over branches of length times |difference of descendant mass|.

    Masses are relative abundances (each point normalised by its 1-norm), so
    the distance is scale invariant in each argument.
    """

    kind = "weighted_unifrac"
    smoothness = CONTINUOUS_NONSMOOTH

    def _eval(self, x, y):
        px = x / np.sum(x)
        py = y / np.sum(y)
        inc = self.incidence
        total = 0.0
        for b in range(inc.n_branches):
            members = inc.matrix[b].astype(bool)
            total += inc.branch_lengths[b] * abs(px[members].sum() - py[members].sum())
        return float(total)

    def _to_points(self, X, z):
        inc = self.incidence
        pz = z / np.sum(z)
        PX = X / np.sum(X, axis=1, keepdims=True)
        diff = inc.matrix @ (PX.T - pz[:, None])  # branches x samples
        return inc.branch_lengths @ np.abs(diff)


class UnweightedUnifracDistance(_UnifracBase):
    """Fraction of branch length unique to either sample's presence profile."""

    kind = "unweighted_unifrac"
    smoothness = DISCONTINUOUS

    def _eval(self, x, y):
        inc = self.incidence
        in_x = (inc.matrix @ (x > 0).astype(np.int64)) > 0
        in_y = (inc.matrix @ (y > 0).astype(np.int64)) > 0
        either = inc.branch_lengths @ (in_x | in_y).astype(np.float64)
        differs = inc.branch_lengths @ (in_x ^ in_y).astype(np.float64)
        return float(differs / either)

    def _to_points(self, X, z):
        inc = self.incidence
        in_X = (inc.matrix @ (X.T > 0).astype(np.int64)) > 0  # branches x samples
        in_z = (inc.matrix @ (z > 0).astype(np.int64)) > 0
        either = inc.branch_lengths @ (in_X | in_z[:, None]).astype(np.float64)
        differs = inc.branch_lengths @ (in_X ^ in_z[:, None]).astype(np.float64)
        return differs / either


class FunctionDistance(Distance):
    """Wrap an arbitrary pairwise callable; used for custom or test distances."""

    def __init__(self, func, kind="custom", smoothness=CONTINUOUS_NONSMOOTH):
        self._func = func
        self.kind = kind
        self.smoothness = smoothness

    def _eval(self, x, y):
        return float(self._func(x, y))


def make_distance(
    kind: str,
    q: GeneralizedForm | np.ndarray | None = None,
    tree: PhyloTree | None = None,
) -> Distance:
    """Build a distance from its CLI-facing kind name."""
    if kind == "euclidean":
        return EuclideanDistance()
    if kind == "generalized_euclidean":
        if q is None:
            raise ShapeError("generalized_euclidean requires a form matrix q")
        return GeneralizedEuclideanDistance(q)
    if kind == "manhattan":
        return ManhattanDistance()
    if kind == "weighted_unifrac":
        if tree is None:
            raise ShapeError("weighted_unifrac requires a tree")
        return WeightedUnifracDistance(tree)
    if kind == "unweighted_unifrac":
        if tree is None:
            raise ShapeError("unweighted_unifrac requires a tree")
        return UnweightedUnifracDistance(tree)
    raise ShapeError(f"unknown distance kind {kind!r}")


def squared_distance_matrix(dist: Distance, X) -> np.ndarray:
    """n-by-n matrix of squared pairwise distances: exact zero diagonal,
    exactly symmetric (upper triangle computed once and mirrored)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ShapeError(f"data must be 2-D, got shape {X.shape}")
    n = X.shape[0]
    for i in range(n):
        dist.validate_point(X[i], context=f"row {i}")
    delta = np.zeros((n, n))
    for i in range(n - 1):
        d = dist._to_points(X[i + 1 :], X[i])
        delta[i, i + 1 :] = np.asarray(d) ** 2
    delta = delta + delta.T
    return delta


def tree_covariance_q(tree: PhyloTree, blend: float) -> GeneralizedForm:
    """Identity-to-tree interpolation of an SPD form from shared branch length.

    S_ij is the branch length shared by the root paths of tips i and j (the
    Brownian-motion tip covariance); S is rescaled to trace p so the two
    mixture endpoints are comparable, and the form is the inverse of
    (1-blend) I + blend S_norm.  blend=0 gives the identity (plain PCA).
    """
    if not 0.0 <= blend <= 1.0:
        raise FormError(f"blend must lie in [0, 1], got {blend}")
    inc = branch_incidence(tree)
    T = inc.matrix.astype(np.float64)
    S = T.T @ (inc.branch_lengths[:, None] * T)
    p = S.shape[0]
    trace = np.trace(S)
    if trace <= 0:
        raise FormError("tree has zero total tip depth; cannot normalise")
    S_norm = S * (p / trace)
    mix = (1.0 - blend) * np.eye(p) + blend * S_norm
    mix = (mix + mix.T) / 2.0
    w, U = np.linalg.eigh(mix)
    if w[0] <= PD_TOL * w[-1]:
        raise FormError(
            "tree covariance is singular at blend=1; use blend < 1 to regularise"
        )
    q = (U / w) @ U.T
    q = (q + q.T) / 2.0
    return GeneralizedForm(q)


def shared_branch_length(tree: PhyloTree) -> np.ndarray:
    """The raw S matrix used by tree_covariance_q (exposed for inspection)."""
    inc = branch_incidence(tree)
    T = inc.matrix.astype(np.float64)
    return T.T @ (inc.branch_lengths[:, None] * T)
