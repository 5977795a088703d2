"""Solvers for ``argmin_f S_p(f) + mu/2 ||f - y||^2`` on a hypergraph.

``p = 2`` has the closed form ``f = mu (L + mu I)^{-1} y``. For other ``p``
the Euler-Lagrange equation ``L_p f + mu (f - y) = 0`` is solved by the
fixed-point sweep

    f_v <- (sum_{u != v} m_uv f_u + mu y_v) / (sum_{u != v} m_uv + mu)

with the weights ``m_uv`` recomputed from the current iterate each sweep
(Jacobi order: every vertex is updated from the same previous iterate).
Each update is a convex combination of neighbour values and ``y_v``, so
iterates started at ``y`` never leave ``[-||y||_inf, ||y||_inf]``.

For ``p`` well above 2 the plain sweep can lock into a period-2 cycle
around the fixed point. The new iterate is therefore blended with the old
one, ``f <- (1 - relaxation) f + relaxation T(f)``; this keeps the fixed
points and the bound above. ``relaxation=1`` is the plain sweep.

``y`` may be a single vertex function or an ``(n, k)`` array of them.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as spla

from . import operators
from .exceptions import InvalidPError, SingularSystemError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverConfig:
    p: float = 2.0
    mu: float = 1.0
    epsilon: float = operators.DEFAULT_EPSILON
    tol: float = 1e-6
    max_iter: int = 1000
    relaxation: float = 0.5

    def __post_init__(self):
        if not self.p >= 1:
            raise InvalidPError(f"p must be >= 1, got {self.p!r}")
        if not self.mu > 0:
            raise ValueError(f"mu must be > 0, got {self.mu!r}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"max_iter must be a positive integer, got {self.max_iter!r}")
        if not 0 < self.relaxation <= 1:
            raise ValueError(f"relaxation must lie in (0, 1], got {self.relaxation!r}")

    def residual_bound(self, y):
        """Largest Euler-Lagrange residual accepted for a converged solve."""
        return 10 * self.tol * (1 + np.max(np.abs(y), initial=0.0))


@dataclass(frozen=True)
class SolveResult:
    f: np.ndarray
    iterations: int
    residual: float
    converged: bool


def euler_lagrange_residual(g, f, y, p, mu, epsilon=operators.DEFAULT_EPSILON):
    """``max_v |(L_p f)_v + mu (f_v - y_v)|``."""
    r = operators.p_laplacian_apply(g, f, p, epsilon) + mu * (f - y)
    return float(np.max(np.abs(r), initial=0.0))


def objective(g, f, y, p, mu, epsilon=operators.DEFAULT_EPSILON):
    f = g.check_vertex_function(f)
    fit = 0.5 * mu * np.sum((f - np.asarray(y, dtype=float)) ** 2, axis=0)
    return operators.smoothness(g, f, p, epsilon) + fit


def solve_p2(g, y, mu=1.0):
    """Closed-form solution of ``L f + mu (f - y) = 0`` by a sparse LU solve."""
    y = g.check_vertex_function(y)
    if not mu > 0:
        raise ValueError(f"mu must be > 0, got {mu!r}")
    A = (operators.laplacian_matrix(g) + mu * sparse.identity(g.num_vertices)).tocsc()
    try:
        f = spla.splu(A).solve(mu * y)
    except RuntimeError as exc:
        raise SingularSystemError(str(exc)) from exc
    if not np.all(np.isfinite(f)):
        raise SingularSystemError("linear solve produced non-finite values")
    residual = euler_lagrange_residual(g, f, y, 2.0, mu)
    return SolveResult(f=f, iterations=1, residual=residual, converged=True)


def _propagation_sums(g, f, a):
    """``sum_{u != v} m_uv f_u`` and ``sum_{u != v} m_uv`` for every vertex ``v``."""
    rows, cols, to_vertex, to_edge = g.nnz_layout
    c = operators._edge_scale(g)
    wide = f.ndim == 2
    a_nz, f_nz = a[rows], f[rows]
    a_sum = (to_edge @ a_nz)[cols]
    af_sum = (to_edge @ (a_nz * f_nz))[cols]
    f_sum = (to_edge @ f_nz)[cols]
    others = g.edge_degrees[cols] - 1
    weighted = (af_sum - a_nz * f_nz) + a_nz * (f_sum - f_nz)
    total = (a_sum - a_nz) + a_nz * (others[:, None] if wide else others)
    scale = c[cols][:, None] if wide else c[cols]
    return 0.5 * (to_vertex @ (scale * weighted)), 0.5 * (to_vertex @ (scale * total))


def _fixed_point(g, y, cfg, weights, callback):
    f = y.copy()
    bound = cfg.residual_bound(y)
    converged = False
    t = 0
    for t in range(1, int(cfg.max_iter) + 1):
        weighted, total = _propagation_sums(g, f, weights(f))
        f_next = (weighted + cfg.mu * y) / (total + cfg.mu)
        if cfg.relaxation != 1:
            f_next = (1 - cfg.relaxation) * f + cfg.relaxation * f_next
        step = np.max(np.abs(f_next - f), initial=0.0)
        f = f_next
        if callback is not None:
            callback(t, f)
        if step < cfg.tol:
            if euler_lagrange_residual(g, f, y, cfg.p, cfg.mu, cfg.epsilon) <= bound:
                converged = True
                break
    residual = euler_lagrange_residual(g, f, y, cfg.p, cfg.mu, cfg.epsilon)
    if not converged:
        logger.warning("p=%g solve stopped after %d sweeps, residual %.3g", cfg.p, t, residual)
    return SolveResult(f=f, iterations=t, residual=residual, converged=converged)


def solve_p1(g, y, cfg=None, callback=None):
    """Fixed-point solve of ``kappa f + mu (f - y) = 0`` (curvature, ``p = 1``).

    ``callback(t, f)`` is called after every sweep with the new iterate.
    """
    cfg = SolverConfig(p=1.0) if cfg is None else cfg
    if cfg.p != 1:
        raise InvalidPError(f"solve_p1 needs p == 1, got {cfg.p!r}")
    y = g.check_vertex_function(y)

    def weights(f):
        return 1.0 / operators.local_variation(g, f, cfg.epsilon)

    return _fixed_point(g, y, cfg, weights, callback)


def solve_p(g, y, cfg=None, callback=None):
    """Fixed-point solve of ``L_p f + mu (f - y) = 0`` for any ``p >= 1``.

    Starts from ``f = y`` and stops once a sweep moves no entry by ``tol`` or
    more and the Euler-Lagrange residual is at most
    ``10 tol (1 + ||y||_inf)``; otherwise runs ``max_iter`` sweeps and
    reports ``converged=False``.
    """
    cfg = SolverConfig() if cfg is None else cfg
    if cfg.p == 1:
        return solve_p1(g, y, cfg, callback)
    y = g.check_vertex_function(y)

    def weights(f):
        return operators._variation_power(g, f, cfg.p, cfg.epsilon)

    return _fixed_point(g, y, cfg, weights, callback)
