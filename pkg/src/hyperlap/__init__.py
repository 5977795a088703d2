"""Semi-supervised classification with un-normalized hypergraph p-Laplacians."""

from .classify import accuracy, encode_labels, predict
from .data import Dataset, load_hypergraph, load_newsgroups, load_zoo, save_hypergraph
from .estimator import HypergraphPLaplacianClassifier
from .hypergraph import Hypergraph, build
from .operators import (
    EdgeFlow,
    curvature_apply,
    divergence,
    gradient,
    laplacian_apply,
    laplacian_matrix,
    local_variation,
    p_laplacian_apply,
    smoothness,
)
from .solve import SolverConfig, SolveResult, solve_p, solve_p1, solve_p2

__version__ = "0.1.0"

__all__ = [
    "Dataset", "EdgeFlow", "Hypergraph", "HypergraphPLaplacianClassifier", "SolveResult",
    "SolverConfig", "accuracy", "build", "curvature_apply", "divergence", "encode_labels",
    "gradient", "laplacian_apply", "laplacian_matrix", "load_hypergraph", "load_newsgroups",
    "load_zoo", "local_variation", "p_laplacian_apply", "predict", "save_hypergraph",
    "smoothness", "solve_p", "solve_p1", "solve_p2",
]
