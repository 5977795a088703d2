"""Discrete differential operators on hypergraphs.

Vertex functions are arrays of shape ``(n,)`` or ``(n, k)``; in the second
case every column is treated as an independent function, which lets the
solvers handle all one-vs-rest problems of a multiclass task at once.

Edge functions (:class:`EdgeFlow`) live on ordered pairs ``(u, v)`` of
distinct members of a hyperedge, laid out as in :attr:`Hypergraph.pairs`.

Everything except :func:`gradient`, :func:`divergence` and
:func:`coefficient_matrix` runs in time linear in the number of
memberships. Within each hyperedge values are taken relative to one member
of the edge, so that a function that is constant on an edge produces exact
zeros rather than rounding noise scaled by large ``||d_u f||^(p-2)``
factors.
"""

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .exceptions import InvalidPError, SizeMismatchError
from .hypergraph import Hypergraph

DEFAULT_EPSILON = 1e-10


@dataclass(frozen=True, eq=False)
class EdgeFlow:
    """A real value for each ordered co-member pair of each hyperedge."""

    graph: Hypergraph
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.graph.num_pairs,):
            raise SizeMismatchError(
                f"edge flow has shape {values.shape}, expected ({self.graph.num_pairs},)"
            )
        object.__setattr__(self, "values", values)

    def transpose(self):
        """The flow ``F'_{uv} = F_{vu}``."""
        return EdgeFlow(self.graph, self.values[self.graph.pair_transpose])

    def inner(self, other):
        """Edge inner product: sum over edges and ordered pairs of ``F_uv G_uv``."""
        return float(np.dot(self.values, other.values))


def inner_vertex(f, g):
    return float(np.dot(np.ravel(f), np.ravel(g)))


def _edge_scale(g):
    """``w(e) / d(e)`` per edge."""
    return g.edge_weights / g.edge_degrees


def _check_p(p):
    if not p >= 1:
        raise InvalidPError(f"p must be >= 1, got {p!r}")
    return float(p)


def _check_epsilon(epsilon, p=2.0):
    if not epsilon >= 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon!r}")
    if epsilon == 0 and p < 2:
        raise ValueError("epsilon must be > 0 when p < 2")
    return float(epsilon)


def gradient(g, f):
    """``(df)_uv = sqrt(w(e)/d(e)) (f_v - f_u)`` for each ordered pair in each edge."""
    f = g.check_vertex_function(f)
    if f.ndim != 1:
        raise SizeMismatchError("gradient takes a single vertex function")
    es, us, vs = g.pairs
    scale = np.sqrt(_edge_scale(g))[es]
    return EdgeFlow(g, scale * (f[vs] - f[us]))


def divergence(g, F):
    """``(div F)_v = sum_e sum_u sqrt(w(e)/d(e)) (F_vu - F_uv)``.

    This is minus the adjoint of :func:`gradient` under the vertex and edge
    inner products.
    """
    if not isinstance(F, EdgeFlow):
        F = EdgeFlow(g, F)
    elif F.graph is not g and F.graph != g:
        raise SizeMismatchError("edge flow belongs to a different hypergraph")
    es, us, vs = g.pairs
    flux = np.sqrt(_edge_scale(g))[es] * F.values
    n = g.num_vertices
    return np.bincount(us, flux, minlength=n) - np.bincount(vs, flux, minlength=n)


def laplacian_matrix(g):
    """Sparse ``D_v - H W D_e^{-1} H^T``."""
    H = g.incidence
    B = H @ sparse.diags(_edge_scale(g)) @ H.T
    return (sparse.diags(g.vertex_degrees) - B).tocsr()


def laplacian_apply(g, f):
    """``(Lf)_v = d(v) f_v - sum_e sum_u w(e)/d(e) h(u,e) h(v,e) f_u``.

    The inner sum includes ``u = v``.
    """
    f = g.check_vertex_function(f)
    H = g.incidence
    c = _edge_scale(g)
    edge_sums = H.T @ f
    edge_sums = c[:, None] * edge_sums if f.ndim == 2 else c * edge_sums
    dv = g.vertex_degrees[:, None] if f.ndim == 2 else g.vertex_degrees
    return dv * f - H @ edge_sums


def _per_edge(x, f):
    return x[:, None] if f.ndim == 2 else x


def _deviations(g, f):
    """Per-membership ``f_v - f_r(e)`` where ``r(e)`` is the first member of ``e``."""
    rows, cols, _, _ = g.nnz_layout
    reps = np.array([e[0] for e in g.edges], dtype=np.intp)
    return f[rows] - f[reps[cols]]


def _squared_variation(g, f):
    """``sum_e sum_{v in e} w(e)/d(e) (f_v - f_u)^2`` per vertex ``u``, without epsilon.

    Computed as a within-edge spread plus the offset of ``f_u`` from the edge
    mean, both nonnegative, so no cancellation can drive it below zero.
    """
    rows, cols, to_vertex, to_edge = g.nnz_layout
    c = _edge_scale(g)
    dev = _deviations(g, f)
    mean = (to_edge @ dev) / _per_edge(g.edge_degrees, f)
    centred = dev - mean[cols]
    spread = to_edge @ (centred ** 2)
    offset = _per_edge((c * g.edge_degrees)[cols], f) * centred ** 2
    return g.incidence @ (_per_edge(c, f) * spread) + to_vertex @ offset


def local_variation(g, f, epsilon=DEFAULT_EPSILON):
    """``||d_u f|| = sqrt(sum_e sum_{(u,v) in e} (df)_uv^2 + epsilon)`` per vertex."""
    f = g.check_vertex_function(f)
    epsilon = _check_epsilon(epsilon)
    return np.sqrt(_squared_variation(g, f) + epsilon)


def _variation_power(g, f, p, epsilon):
    # ||d_u f||^(p-2); exactly 1 at p == 2 so the linear case shares this path
    if p == 2:
        return np.ones_like(f)
    return (_squared_variation(g, f) + epsilon) ** ((p - 2) / 2)


def _weighted_difference(g, f, a):
    """``1/2 sum_e sum_u w(e)/d(e) h h (a_u + a_v)(f_v - f_u)`` per vertex ``v``."""
    rows, cols, to_vertex, to_edge = g.nnz_layout
    c = _edge_scale(g)
    dev = _deviations(g, f)
    a_nz = a[rows]
    a_sum = (to_edge @ a_nz)[cols]
    dev_sum = (to_edge @ dev)[cols]
    adev_sum = (to_edge @ (a_nz * dev))[cols]
    d_e = _per_edge(g.edge_degrees[cols], f)
    terms = dev * a_sum + a_nz * d_e * dev - adev_sum - a_nz * dev_sum
    return 0.5 * (to_vertex @ (_per_edge(c[cols], f) * terms))


def p_laplacian_apply(g, f, p, epsilon=DEFAULT_EPSILON):
    """The p-Laplacian ``-1/2 div(||df||^(p-2) df)`` of ``f``.

    Evaluated in expanded form::

        (L_p f)_v = 1/2 sum_e sum_u w(e)/d(e) h(u,e) h(v,e)
                    (||d_u f||^(p-2) + ||d_v f||^(p-2)) (f_v - f_u)

    with epsilon-floored local variations. ``p = 2`` gives the linear
    Laplacian and ``p = 1`` the curvature operator.
    """
    f = g.check_vertex_function(f)
    p = _check_p(p)
    epsilon = _check_epsilon(epsilon, p)
    return _weighted_difference(g, f, _variation_power(g, f, p, epsilon))


def curvature_apply(g, f, epsilon=DEFAULT_EPSILON):
    """Curvature ``-1/2 div(df / ||df||)``, the p = 1 case of :func:`p_laplacian_apply`."""
    f = g.check_vertex_function(f)
    epsilon = _check_epsilon(epsilon, 1.0)
    inv = 1.0 / local_variation(g, f, epsilon)
    return _weighted_difference(g, f, inv)


def smoothness(g, f, p, epsilon=DEFAULT_EPSILON):
    """Smoothness functional ``1/(2p) sum_u ||d_u f||^p``.

    Every co-member pair enters the local variation of both of its
    endpoints, and the extra factor 1/2 undoes that double count. With this
    normalisation the gradient of the functional is exactly
    ``p_laplacian_apply(g, f, p)`` and ``f . Lf = 2 * smoothness(g, f, 2)``.
    For ``(n, k)`` input one value per column is returned.
    """
    f = g.check_vertex_function(f)
    p = _check_p(p)
    epsilon = _check_epsilon(epsilon)
    total = np.sum(local_variation(g, f, epsilon) ** p, axis=0)
    return total / (2 * p)


def coefficient_matrix(g, f, p, epsilon=DEFAULT_EPSILON):
    """Sparse symmetric matrix of iteration weights ``m_uv`` (``u != v``).

    ``m_uv = 1/2 sum_e w(e)/d(e) h(u,e) h(v,e) (||d_u f||^(p-2) + ||d_v f||^(p-2))``,
    summed over every edge containing both vertices. Built from the explicit
    pair list; the solvers use an equivalent membership-linear form.
    """
    f = g.check_vertex_function(f)
    if f.ndim != 1:
        raise SizeMismatchError("coefficient_matrix takes a single vertex function")
    p = _check_p(p)
    epsilon = _check_epsilon(epsilon, p)
    a = _variation_power(g, f, p, epsilon)
    es, us, vs = g.pairs
    vals = 0.5 * _edge_scale(g)[es] * (a[us] + a[vs])
    n = g.num_vertices
    # duplicates (pairs sharing several edges) are summed by the constructor
    return sparse.csr_matrix((vals, (us, vs)), shape=(n, n))
