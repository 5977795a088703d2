"""Hypergraph incidence structure and degrees."""

import logging
from functools import cached_property

import numpy as np
from scipy import sparse

from .exceptions import (
    EmptyEdgeError,
    IndexOutOfRangeError,
    NonpositiveWeightError,
    SizeMismatchError,
)

logger = logging.getLogger(__name__)


def _readonly(a):
    a.setflags(write=False)
    return a


class Hypergraph:
    """An undirected, edge-weighted hypergraph over vertices ``0 .. n-1``.

    Use :func:`build` (or :meth:`from_incidence`) rather than calling the
    constructor directly. Instances are immutable once built.

    Attributes
    ----------
    num_vertices, num_edges : int
    edges : tuple of ndarray
        Sorted member indices of each hyperedge.
    edge_weights : ndarray of shape (num_edges,)
        ``w(e)``.
    vertex_degrees : ndarray of shape (num_vertices,)
        ``d(v) = sum_e w(e) h(v, e)``.
    edge_degrees : ndarray of shape (num_edges,)
        ``d(e) = |e|``.
    incidence : scipy.sparse.csr_matrix of shape (num_vertices, num_edges)
        The 0/1 matrix ``H``.
    """

    def __init__(self, num_vertices, edges, edge_weights):
        self.num_vertices = int(num_vertices)
        self.edges = tuple(_readonly(np.asarray(e, dtype=np.intp)) for e in edges)
        self.num_edges = len(self.edges)
        self.edge_weights = _readonly(np.asarray(edge_weights, dtype=float))

        sizes = np.array([len(e) for e in self.edges], dtype=np.intp)
        rows = np.concatenate(self.edges) if self.edges else np.empty(0, np.intp)
        cols = np.repeat(np.arange(self.num_edges), sizes)
        H = sparse.csr_matrix(
            (np.ones(len(rows)), (rows, cols)),
            shape=(self.num_vertices, self.num_edges),
        )
        H.sort_indices()
        self.incidence = H
        self.edge_degrees = _readonly(sizes)
        self.vertex_degrees = _readonly(
            np.bincount(rows, weights=self.edge_weights[cols], minlength=self.num_vertices)
        )

    # vertex -> incident edges, the other half of the adjacency
    @cached_property
    def vertex_edges(self):
        H = self.incidence
        return tuple(_readonly(H.indices[H.indptr[v]:H.indptr[v + 1]].copy())
                     for v in range(self.num_vertices))

    @cached_property
    def isolated_vertices(self):
        return _readonly(np.flatnonzero(np.diff(self.incidence.indptr) == 0))

    @cached_property
    def pairs(self):
        """Ordered co-member pairs ``(e, u, v)`` with ``u != v``, edge-major.

        Returns three index arrays of equal length. Both ``(u, v)`` and
        ``(v, u)`` appear for every pair of distinct members of an edge.
        """
        es, us, vs = [], [], []
        for k, members in enumerate(self.edges):
            u, v = np.meshgrid(members, members, indexing="ij")
            mask = u != v
            us.append(u[mask])
            vs.append(v[mask])
            es.append(np.full(mask.sum(), k, dtype=np.intp))
        if not es:
            empty = np.empty(0, np.intp)
            return empty, empty.copy(), empty.copy()
        return tuple(_readonly(np.concatenate(a)) for a in (es, us, vs))

    @cached_property
    def pair_transpose(self):
        """Index array mapping each ordered pair ``(e, u, v)`` to ``(e, v, u)``."""
        es, us, vs = self.pairs
        return _readonly(np.lexsort((us, vs, es)))

    @cached_property
    def nnz_layout(self):
        """Per-membership arrays in CSR order.

        Returns ``(rows, cols, to_vertex, to_edge)``: the vertex and edge of
        every nonzero of ``H``, plus sparse matrices summing a per-membership
        array onto vertices and onto edges.
        """
        H = self.incidence
        nnz = H.nnz
        rows = np.repeat(np.arange(self.num_vertices), np.diff(H.indptr))
        cols = H.indices.copy()
        ones = np.ones(nnz)
        to_vertex = sparse.csr_matrix((ones, (rows, np.arange(nnz))), shape=(self.num_vertices, nnz))
        to_edge = sparse.csr_matrix((ones, (cols, np.arange(nnz))), shape=(self.num_edges, nnz))
        return _readonly(rows), _readonly(cols), to_vertex, to_edge

    @property
    def num_pairs(self):
        return len(self.pairs[0])

    @classmethod
    def from_incidence(cls, H, weights=None):
        """Build from a ``(n_vertices, n_edges)`` 0/1 matrix, one edge per column."""
        H = sparse.csc_matrix(H)
        edges = [H.indices[H.indptr[j]:H.indptr[j + 1]][H.data[H.indptr[j]:H.indptr[j + 1]] != 0]
                 for j in range(H.shape[1])]
        return build(edges, weights=weights, num_vertices=H.shape[0])

    def vertex_degree(self, v):
        return float(self.vertex_degrees[_check_index(v, self.num_vertices, "vertex")])

    def edge_degree(self, e):
        return int(self.edge_degrees[_check_index(e, self.num_edges, "edge")])

    def check_vertex_function(self, f):
        """Return ``f`` as a float array, checking its leading dimension."""
        f = np.asarray(f, dtype=float)
        if f.ndim not in (1, 2) or f.shape[0] != self.num_vertices:
            raise SizeMismatchError(
                f"vertex function has shape {f.shape}, expected leading "
                f"dimension {self.num_vertices}"
            )
        if not np.all(np.isfinite(f)):
            raise ValueError("vertex function contains non-finite values")
        return f

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.num_vertices == other.num_vertices
            and self.num_edges == other.num_edges
            and all(np.array_equal(a, b) for a, b in zip(self.edges, other.edges))
            and np.array_equal(self.edge_weights, other.edge_weights)
        )

    __hash__ = None

    def __repr__(self):
        return f"Hypergraph(num_vertices={self.num_vertices}, num_edges={self.num_edges})"


def _check_index(i, n, what):
    if not 0 <= i < n:
        raise IndexOutOfRangeError(f"{what} index {i} out of range [0, {n})")
    return i


def build(hyperedges, weights=None, num_vertices=None):
    """Build a :class:`Hypergraph` from a list of vertex-index collections.

    Duplicate members of an edge are collapsed. ``num_vertices`` defaults to
    one past the largest index used; vertices in no edge are allowed (their
    degree is 0) and logged.

    Raises
    ------
    EmptyEdgeError
        If any edge has fewer than two distinct members.
    NonpositiveWeightError
        If a weight is not strictly positive (or not finite).
    IndexOutOfRangeError
        If a member index falls outside ``[0, num_vertices)``.
    """
    edges = []
    for k, e in enumerate(hyperedges):
        members = np.unique(np.asarray(list(e), dtype=np.intp))
        if len(members) < 2:
            raise EmptyEdgeError(f"hyperedge {k} has {len(members)} distinct member(s); need >= 2")
        edges.append(members)

    if weights is None:
        weights = np.ones(len(edges))
    else:
        weights = np.asarray(weights, dtype=float)
        if weights.shape != (len(edges),):
            raise SizeMismatchError(f"got {weights.size} weights for {len(edges)} hyperedges")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
            raise NonpositiveWeightError("hyperedge weights must be finite and > 0")

    max_index = max((int(e[-1]) for e in edges), default=-1)
    if num_vertices is None:
        num_vertices = max_index + 1
    for k, e in enumerate(edges):
        if e[0] < 0 or e[-1] >= num_vertices:
            raise IndexOutOfRangeError(
                f"hyperedge {k} references a vertex outside [0, {num_vertices})"
            )

    g = Hypergraph(num_vertices, edges, weights)
    if len(g.isolated_vertices):
        logger.info("%d vertices belong to no hyperedge", len(g.isolated_vertices))
    return g
