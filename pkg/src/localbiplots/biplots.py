"""Local biplot axes for classical scaling, plus correlation biplots.

The axes at a query point z are the transposed Jacobian of the supplemental
-point map f.  Differentiating a_i = g_ii - d(x_i, z)^2 gives

    LB(z) = -1/2 G(z) M diag(lambda_1..k)^-1,

with G(z)_{ji} = d/dz_j of d(x_i, z)^2.  For distances that are not smooth,
one-sided variants replace the gradient of the squared distance with a
one-sided difference quotient of the distance itself times its value at z:

    LB^{eps,+/-}(z) = -F^{eps,+/-}(z) diag(d(x_i, z)) M diag(lambda)^-1,

where F holds forward (or backward) quotients of d over step eps.  For the
positive/negative modes the step is a small surrogate for the one-sided
limit; for the eps_* modes it is user-chosen (for count data, 1 is the
natural unit).  As eps -> 0 on a differentiable distance all variants agree
with the analytic matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distances import CONTINUOUS_NONSMOOTH, DIFFERENTIABLE, Distance
from .errors import DomainError, ModeError, ShapeError
from .mds import MdsSolution

ANALYTIC = "analytic"
POSITIVE = "positive"
NEGATIVE = "negative"
EPS_POSITIVE = "eps_positive"
EPS_NEGATIVE = "eps_negative"

VARIANTS = (ANALYTIC, POSITIVE, NEGATIVE, EPS_POSITIVE, EPS_NEGATIVE)

# Central finite-difference step for differentiable distances without a
# closed-form gradient (sqrt(machine eps) scaling).
FD_STEP = 1e-6
# Step standing in for the one-sided limits of the positive/negative modes.
LIMIT_STEP = 1e-7


@dataclass(frozen=True)
class LbMode:
    """Which local-biplot variant to compute, with its step when needed."""

    variant: str
    epsilon: float | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ModeError(f"unknown mode {self.variant!r}; expected one of {VARIANTS}")
        if self.variant in (EPS_POSITIVE, EPS_NEGATIVE):
            if self.epsilon is None or self.epsilon <= 0:
                raise ModeError(f"mode {self.variant} requires epsilon > 0")

    def check_distance(self, dist: Distance) -> None:
        if self.variant == ANALYTIC and dist.smoothness != DIFFERENTIABLE:
            raise ModeError(
                f"analytic mode requires a differentiable distance; "
                f"{dist.kind} is {dist.smoothness}"
            )
        if self.variant in (POSITIVE, NEGATIVE) and dist.smoothness not in (
            DIFFERENTIABLE,
            CONTINUOUS_NONSMOOTH,
        ):
            raise ModeError(
                f"{self.variant} mode needs one-sided limits to exist; "
                f"{dist.kind} is {dist.smoothness}: use eps_positive/eps_negative"
            )


@dataclass(frozen=True, eq=False)
class LocalBiplotMatrix:
    """p x k matrix whose row j is the axis for variable j at query_point."""

    axes: np.ndarray
    query_point: np.ndarray
    mode: LbMode

    @property
    def shape(self):
        return self.axes.shape


@dataclass(frozen=True, eq=False)
class LbField:
    """Per-point results of lb_field: matrices[i] is None where errors[i] hit."""

    matrices: list
    errors: list

    @property
    def ok(self) -> bool:
        return not self.errors

    def successful(self) -> list:
        return [m for m in self.matrices if m is not None]


def _grad_sq_fd(dist: Distance, X: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Central differences of d(x_i, .)^2, per-coordinate step scaling."""
    p = z.shape[0]
    out = np.empty((p, X.shape[0]))
    for j in range(p):
        h = max(FD_STEP, FD_STEP * abs(z[j]))
        zp = z.copy()
        zp[j] += h
        zm = z.copy()
        zm[j] -= h
        dp = dist.to_points(X, zp) ** 2
        dm = dist.to_points(X, zm) ** 2
        out[j] = (dp - dm) / (2.0 * h)
    return out


def lb_axes(
    sol: MdsSolution, X, dist: Distance, z, mode: LbMode
) -> LocalBiplotMatrix:
    """Local biplot axes at z for the scaling solution built from (X, dist)."""
    X = np.asarray(X, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    if z.shape != (X.shape[1],):
        raise ShapeError(f"query point must have length {X.shape[1]}, got {z.shape}")
    mode.check_distance(dist)

    weights = sol.m_embed / sol.lam[: sol.k]  # n x k, columns already / lambda

    if mode.variant == ANALYTIC:
        grad = dist.grad_sq(X, z)
        if grad is None:
            grad = _grad_sq_fd(dist, X, z)
        axes = -0.5 * grad @ weights
        return LocalBiplotMatrix(axes=axes, query_point=z.copy(), mode=mode)

    d0 = dist.to_points(X, z)
    p = z.shape[0]
    f = np.empty((p, X.shape[0]))
    forward = mode.variant in (POSITIVE, EPS_POSITIVE)
    for j in range(p):
        if mode.variant in (EPS_POSITIVE, EPS_NEGATIVE):
            step = float(mode.epsilon)
        else:
            step = LIMIT_STEP * (1.0 + abs(z[j]))
        zj = z.copy()
        zj[j] += step if forward else -step
        try:
            dist.validate_point(zj)
        except DomainError:
            raise DomainError(
                f"perturbing variable index {j} by "
                f"{'+' if forward else '-'}{step:g} leaves the domain of {dist.kind}"
            ) from None
        dj = dist.to_points(X, zj)
        f[j] = (dj - d0) / step if forward else (d0 - dj) / step
    axes = -(f * d0) @ weights
    return LocalBiplotMatrix(axes=axes, query_point=z.copy(), mode=mode)


def lb_field(sol: MdsSolution, X, dist: Distance, points, mode: LbMode) -> LbField:
    """lb_axes at each point, order preserved; per-point errors collected."""
    matrices = []
    errors = []
    for i, z in enumerate(points):
        try:
            matrices.append(lb_axes(sol, X, dist, z, mode))
        except (DomainError, ShapeError, ModeError) as exc:
            matrices.append(None)
            errors.append((i, exc))
    return LbField(matrices=matrices, errors=errors)


def lb_constancy(field) -> float:
    """Max pairwise relative Frobenius deviation over a field of LB matrices.

    Zero iff all matrices are equal; A vs 2A gives 0.5.  Accepts an LbField
    or a plain list of LocalBiplotMatrix/arrays.
    """
    if isinstance(field, LbField):
        mats = [m.axes for m in field.successful()]
    else:
        mats = [m.axes if isinstance(m, LocalBiplotMatrix) else np.asarray(m) for m in field]
    if not mats:
        raise ShapeError("lb_constancy needs a non-empty field")
    shape = mats[0].shape
    if any(m.shape != shape for m in mats):
        raise ShapeError("lb_constancy needs matrices of uniform shape")
    stacked = np.stack(mats)
    scale = float(np.max(np.sqrt(np.sum(stacked**2, axis=(1, 2)))))
    if scale == 0.0:
        return 0.0
    worst = 0.0
    for i in range(len(mats)):
        diffs = stacked[i + 1 :] - stacked[i]
        if diffs.size:
            worst = max(worst, float(np.max(np.sqrt(np.sum(diffs**2, axis=(1, 2))))))
    return worst / scale


@dataclass(frozen=True, eq=False)
class CorrelationBiplot:
    """Pearson correlations between data columns and embedding columns.

    Rows for zero-variance data columns are zero and flagged by index.
    """

    matrix: np.ndarray
    constant_columns: list[int]


def correlation_biplot(X, sol: MdsSolution) -> CorrelationBiplot:
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    if n < 2:
        raise ShapeError("correlation biplot needs at least two samples")
    emb = sol.m_embed
    xc = X - X.mean(axis=0)
    ec = emb - emb.mean(axis=0)
    sx = np.sqrt(np.sum(xc**2, axis=0))
    se = np.sqrt(np.sum(ec**2, axis=0))
    constant = [int(j) for j in np.flatnonzero(sx == 0.0)]
    sx_safe = np.where(sx == 0.0, 1.0, sx)
    corr = (xc.T @ ec) / np.outer(sx_safe, se)
    corr[constant, :] = 0.0
    corr = np.clip(corr, -1.0, 1.0)
    return CorrelationBiplot(matrix=corr, constant_columns=constant)


def align_column_signs(a: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """Flip columns of a so each correlates non-negatively with ref's column.

    Eigenvector signs are arbitrary; cross-method comparisons align first.
    """
    a = np.asarray(a, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    if a.shape != ref.shape:
        raise ShapeError(f"cannot align shapes {a.shape} and {ref.shape}")
    signs = np.sign(np.sum(a * ref, axis=0))
    signs[signs == 0] = 1.0
    return a * signs


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of the flattened matrices (0 if either is all zero)."""
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(a @ b / (na * nb))
