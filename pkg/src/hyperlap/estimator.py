"""scikit-learn compatible transductive classifier."""

import logging

import numpy as np
from scipy import sparse
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .classify import encode_labels, predict
from .hypergraph import Hypergraph
from .operators import DEFAULT_EPSILON
from .solve import SolverConfig, solve_p, solve_p2

logger = logging.getLogger(__name__)

UNLABELED = -1


def check_incidence(X):
    """Validate a samples-by-hyperedges 0/1 matrix and return it as CSC.

    Columns with fewer than two members cannot form a hyperedge; they are
    dropped and the indices of the kept columns returned alongside.
    """
    X = check_array(X, accept_sparse=("csr", "csc", "coo"), dtype=float)
    X = sparse.csc_matrix(X)
    X.eliminate_zeros()
    if np.any(X.data != 1):
        raise ValueError("incidence matrix must contain only 0 and 1")
    sizes = np.diff(X.indptr)
    kept = np.flatnonzero(sizes >= 2)
    if len(kept) < X.shape[1]:
        logger.warning("dropping %d columns with fewer than 2 members", X.shape[1] - len(kept))
    return X[:, kept], kept


class HypergraphPLaplacianClassifier(ClassifierMixin, BaseEstimator):
    """Semi-supervised classification with the hypergraph p-Laplacian.

    Transductive: ``fit`` receives every sample, with unlabeled ones marked
    ``-1`` in ``y`` (the ``sklearn.semi_supervised`` convention), and labels
    all of them. Samples are the vertices; each column of ``X`` is a
    hyperedge holding the samples with a 1 in that column. A prebuilt
    :class:`~hyperlap.hypergraph.Hypergraph` may be passed instead of ``X``.

    For each class a seed function is built (+1 for labeled members, -1 for
    other labeled samples, 0 elsewhere) and smoothed by minimising
    ``S_p(f) + mu/2 ||f - y||^2``; each sample takes the class whose
    smoothed score is largest.

    Parameters
    ----------
    p : float, default=2.0
        Exponent of the smoothness term, ``p >= 1``. ``p = 2`` is solved in
        closed form, other values by fixed-point iteration.
    mu : float, default=1.0
        Weight of the fitting term.
    epsilon : float, default=1e-10
        Floor added under the square root of each local variation.
    tol : float, default=1e-6
        Stopping threshold on the largest change between sweeps.
    max_iter : int, default=1000
    relaxation : float, default=0.5
        Weight of the new sweep when blending it with the previous iterate;
        1 gives the unblended fixed-point sweep.
    edge_weights : array-like of shape (n_edges,), default=None
        Hyperedge weights; all ones when omitted. Ignored when a
        ``Hypergraph`` is passed to ``fit``.

    Attributes
    ----------
    classes_ : ndarray
    hypergraph_ : Hypergraph
    scores_ : ndarray of shape (n_samples, n_classes)
    transduction_ : ndarray of shape (n_samples,)
    n_iter_ : int
    converged_ : bool
    residual_ : float
    """

    def __init__(self, p=2.0, mu=1.0, epsilon=DEFAULT_EPSILON, tol=1e-6, max_iter=1000,
                 relaxation=0.5, edge_weights=None):
        self.p = p
        self.mu = mu
        self.epsilon = epsilon
        self.tol = tol
        self.max_iter = max_iter
        self.relaxation = relaxation
        self.edge_weights = edge_weights

    def _hypergraph(self, X):
        if isinstance(X, Hypergraph):
            return X
        X, kept = check_incidence(X)
        weights = None
        if self.edge_weights is not None:
            weights = np.asarray(self.edge_weights, dtype=float)[kept]
        return Hypergraph.from_incidence(X, weights=weights)

    def fit(self, X, y):
        g = self._hypergraph(X)
        y = np.asarray(y)
        if y.ndim != 1 or len(y) != g.num_vertices:
            raise ValueError(f"y must have one entry per sample ({g.num_vertices})")
        labeled = y != UNLABELED
        if not labeled.any():
            raise ValueError("y has no labeled samples")
        cfg = SolverConfig(p=self.p, mu=self.mu, epsilon=self.epsilon, tol=self.tol,
                           max_iter=self.max_iter, relaxation=self.relaxation)

        self.classes_ = np.unique(y[labeled])
        seeds = encode_labels(y, labeled, self.classes_).columns
        if cfg.p == 2:
            result = solve_p2(g, seeds, cfg.mu)
        else:
            result = solve_p(g, seeds, cfg)

        self.hypergraph_ = g
        self.scores_ = result.f
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        self.residual_ = result.residual
        if len(self.classes_) == 1:
            self.transduction_ = np.repeat(self.classes_, g.num_vertices)
        else:
            self.transduction_ = predict(result.f, self.classes_).assigned_class
        return self

    def _check_same_samples(self, X):
        check_is_fitted(self, "transduction_")
        n = X.num_vertices if isinstance(X, Hypergraph) else np.shape(X)[0]
        if n != self.hypergraph_.num_vertices:
            raise ValueError(
                f"transductive model fitted on {self.hypergraph_.num_vertices} samples; "
                f"got {n}"
            )

    def decision_function(self, X):
        self._check_same_samples(X)
        return self.scores_

    def predict(self, X):
        """Labels of the samples seen in ``fit``; ``X`` must be that same data."""
        self._check_same_samples(X)
        return self.transduction_
