"""B-spline basis evaluation and the stacked least-squares solve.

Basis functions are evaluated by the Cox-de Boor recursion on a clamped
uniform knot vector.  The right endpoint uses the closed convention: at
t = b the last basis function equals 1, so the partition of unity holds on
the whole closed interval.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SampleGrid, WeightMatrix
from .errors import SingularSystemError, ValidationError

__all__ = [
    "KnotVector",
    "BasisMatrix",
    "DesignMatrix",
    "make_knots",
    "basis_matrix",
    "build_design",
    "solve_least_squares",
]

_UNITY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class KnotVector:
    """Clamped knot sequence defining ``n_basis`` B-splines of a given order."""

    knots: np.ndarray
    order: int
    n_basis: int

    def __post_init__(self):
        t = self.knots
        t.setflags(write=False)
        if self.n_basis < self.order:
            raise ValidationError(
                f"need at least as many basis functions as the order "
                f"({self.n_basis} < {self.order})"
            )
        if t.shape[0] != self.n_basis + self.order:
            raise ValidationError("knot vector length must equal n_basis + order")
        if np.any(np.diff(t) < 0):
            raise ValidationError("knots must be nondecreasing")
        k = self.order
        if np.any(t[:k] != t[0]) or np.any(t[-k:] != t[-1]):
            raise ValidationError(
                f"boundary knots must repeat with multiplicity {k} (clamped)"
            )
        interior = t[k:-k]
        if interior.shape[0] and np.any(np.diff(interior) <= 0):
            raise ValidationError("interior knots must be strictly increasing")

    @property
    def span(self) -> tuple[float, float]:
        return float(self.knots[0]), float(self.knots[-1])


@dataclass(frozen=True, eq=False)
class BasisMatrix:
    """M x K matrix of basis values B_k(t_m)."""

    values: np.ndarray

    def __post_init__(self):
        v = self.values
        v.setflags(write=False)
        if np.any(v < -_UNITY_TOL) or np.any(v > 1.0 + _UNITY_TOL):
            raise ValidationError("basis values must lie in [0, 1]")
        if np.max(np.abs(v.sum(axis=1) - 1.0)) > _UNITY_TOL:
            raise ValidationError("basis rows must sum to 1 (partition of unity)")


@dataclass(frozen=True, eq=False)
class DesignMatrix:
    """(N*M) x (L*K) stacked design: entry ((n,m),(k,l)) = y_ln * B_k(t_m).

    Rows are sample-major (sample n occupies rows n*M .. n*M + M - 1) and
    columns are basis-major (column index k*L + l).
    """

    values: np.ndarray
    n_samples: int
    n_points: int
    n_components: int
    n_basis: int

    def __post_init__(self):
        v = self.values
        v.setflags(write=False)
        if v.shape != (self.n_samples * self.n_points, self.n_basis * self.n_components):
            raise ValidationError("design matrix shape does not match its dimensions")
        if not np.all(np.isfinite(v)):
            raise ValidationError("design matrix contains non-finite entries")


def make_knots(a: float, b: float, n_basis: int, order: int = 4) -> KnotVector:
    """Clamped uniform knots on [a, b]: ``order`` copies of each endpoint and
    ``n_basis - order`` equally spaced interior knots."""
    if not a < b:
        raise ValidationError(f"empty domain: a={a} must be < b={b}")
    if order < 1:
        raise ValidationError("order must be >= 1")
    if n_basis < order:
        raise ValidationError(
            f"need at least as many basis functions as the order "
            f"({n_basis} < {order})"
        )
    interior = np.linspace(a, b, n_basis - order + 2)[1:-1]
    knots = np.concatenate((np.full(order, float(a)), interior, np.full(order, float(b))))
    return KnotVector(knots=knots, order=order, n_basis=n_basis)


def basis_matrix(grid: SampleGrid, knots: KnotVector) -> BasisMatrix:
    """Evaluate all basis functions on the grid by the Cox-de Boor recursion."""
    x = grid.points
    t = knots.knots
    a, b = knots.span
    if x[0] < a or x[-1] > b:
        raise ValidationError(
            f"grid range [{x[0]}, {x[-1]}] falls outside the knot span [{a}, {b}]"
        )
    n_knots = t.shape[0]
    # degree 0: indicator of [t_i, t_{i+1}), with t = b assigned to the last
    # nonempty span so the right endpoint is closed
    basis = np.zeros((x.shape[0], n_knots - 1))
    for i in range(n_knots - 1):
        basis[:, i] = (t[i] <= x) & (x < t[i + 1])
    last_span = int(np.max(np.nonzero(t < t[-1])[0]))
    basis[x == b, :] = 0.0
    basis[x == b, last_span] = 1.0
    for deg in range(1, knots.order):
        prev = basis
        basis = np.zeros((x.shape[0], n_knots - deg - 1))
        for i in range(n_knots - deg - 1):
            left_den = t[i + deg] - t[i]
            right_den = t[i + deg + 1] - t[i + 1]
            term = np.zeros(x.shape[0])
            if left_den > 0:
                term += (x - t[i]) / left_den * prev[:, i]
            if right_den > 0:
                term += (t[i + deg + 1] - x) / right_den * prev[:, i + 1]
            basis[:, i] = term
    return BasisMatrix(values=basis[:, : knots.n_basis])


def build_design(basis: BasisMatrix, weights: WeightMatrix) -> DesignMatrix:
    """Assemble the stacked design from basis values and aggregation weights."""
    bmat = basis.values
    y = weights.values
    m, k = bmat.shape
    l, n = y.shape
    # block for sample n is kron(B, y[:, n]^T); one broadcast builds them all
    values = (y.T[:, None, None, :] * bmat[None, :, :, None]).reshape(n * m, k * l)
    return DesignMatrix(
        values=values, n_samples=n, n_points=m, n_components=l, n_basis=k
    )


def solve_least_squares(
    design: DesignMatrix, response, ridge: float = 0.0
) -> tuple[np.ndarray, float]:
    """Minimize ||D theta - A||_2 (+ ridge penalty) by orthogonal factorization.

    Returns the coefficient vector and the estimated condition number of the
    solved system.  A rank-deficient system with ridge = 0 raises
    :class:`SingularSystemError` instead of silently regularizing.
    """
    if ridge < 0:
        raise ValidationError("ridge must be nonnegative")
    a = np.asarray(response, dtype=np.float64).reshape(-1)
    d = design.values
    if a.shape[0] != d.shape[0]:
        raise ValidationError(
            f"response length {a.shape[0]} does not match design rows {d.shape[0]}"
        )
    if ridge > 0:
        p = d.shape[1]
        d = np.vstack((d, np.sqrt(ridge) * np.eye(p)))
        a = np.concatenate((a, np.zeros(p)))
    coeffs, _, rank, svals = np.linalg.lstsq(d, a, rcond=None)
    cond = float(svals[0] / svals[-1]) if svals[-1] > 0 else float("inf")
    if ridge == 0 and rank < d.shape[1]:
        raise SingularSystemError(
            f"design matrix is rank deficient (rank {rank} < {d.shape[1]} columns); "
            "add samples with more varied weights, lower n_basis, or set ridge > 0",
            condition=cond,
        )
    return coeffs, cond
