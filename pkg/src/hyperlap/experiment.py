"""Accuracy sweeps over p (and mu) with repeated random labeled splits."""

import csv
import io
import sys
from dataclasses import dataclass, field

import numpy as np

from .classify import accuracy, stratified_labeled_mask
from .data import load_dataset
from .estimator import UNLABELED, HypergraphPLaplacianClassifier
from .exceptions import InvalidPError
from .operators import DEFAULT_EPSILON

DEFAULT_P_VALUES = (2.0, 3.0, 3.1, 3.2, 3.3, 3.4, 3.5, 3.6, 3.7, 3.8, 3.9, 4.0)
DEFAULT_MU_GRID = tuple(float(m) for m in np.logspace(-2, 2, 9))
CSV_COLUMNS = ("p", "mean_accuracy", "std_accuracy", "trials", "converged")


@dataclass(frozen=True)
class ExperimentSpec:
    dataset: str
    kind: str = "zoo"
    p_values: tuple = DEFAULT_P_VALUES
    mu: float = 1.0
    labeled_fraction: float = 0.2
    trials: int = 20
    seed: int = 0
    tol: float = 1e-6
    max_iter: int = 1000
    epsilon: float = DEFAULT_EPSILON
    relaxation: float = 0.5
    include_zero_edges: bool = False
    subset_size: int = 200

    def __post_init__(self):
        object.__setattr__(self, "p_values", tuple(float(p) for p in self.p_values))
        if not self.p_values:
            raise ValueError("p_values must not be empty")
        bad = [p for p in self.p_values if not p >= 1]
        if bad:
            raise InvalidPError(f"p values must be >= 1, got {bad}")
        if not 0 < self.labeled_fraction < 1:
            raise ValueError(f"labeled_fraction must lie in (0, 1), got {self.labeled_fraction}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.mu > 0:
            raise ValueError("mu must be > 0")
        if self.kind not in ("zoo", "newsgroups", "native"):
            raise ValueError(f"unknown dataset kind {self.kind!r}")


@dataclass(frozen=True)
class ResultRow:
    p: float
    mean_accuracy: float
    std_accuracy: float
    trials: int
    converged: int
    mu: float = None
    accuracies: tuple = field(default=(), repr=False)


def _splits(labels, spec):
    rng = np.random.default_rng(spec.seed)
    return [stratified_labeled_mask(labels, spec.labeled_fraction, rng)
            for _ in range(spec.trials)]


def _sweep(dataset, spec, p, mu, splits):
    truth = dataset.truth_labels
    scores, converged = [], 0
    for labeled in splits:
        y = np.where(labeled, truth, UNLABELED)
        clf = HypergraphPLaplacianClassifier(
            p=p, mu=mu, epsilon=spec.epsilon, tol=spec.tol, max_iter=spec.max_iter,
            relaxation=spec.relaxation,
        ).fit(dataset.hypergraph, y)
        scores.append(100.0 * accuracy(clf.transduction_, truth, ~labeled))
        converged += bool(clf.converged_)
    scores = np.array(scores)
    return ResultRow(p=p, mean_accuracy=float(scores.mean()), std_accuracy=float(scores.std()),
                     trials=len(scores), converged=converged, mu=mu,
                     accuracies=tuple(scores))


def run_experiment(spec, dataset=None):
    """One result row per p, all p values sharing the same labeled splits."""
    if dataset is None:
        dataset = load_dataset(spec.dataset, spec.kind, include_zero_edges=spec.include_zero_edges,
                               subset_size=spec.subset_size, seed=spec.seed)
    splits = _splits(dataset.truth_labels, spec)
    return [_sweep(dataset, spec, p, spec.mu, splits) for p in spec.p_values]


def run_mu_sweep(spec, mu_values=DEFAULT_MU_GRID, dataset=None):
    if dataset is None:
        dataset = load_dataset(spec.dataset, spec.kind, include_zero_edges=spec.include_zero_edges,
                               subset_size=spec.subset_size, seed=spec.seed)
    splits = _splits(dataset.truth_labels, spec)
    return [_sweep(dataset, spec, p, float(mu), splits)
            for mu in mu_values for p in spec.p_values]


def _fmt_p(p):
    return f"{p:g}"


def format_table(rows, fmt="text"):
    with_mu = any(r.mu is not None for r in rows) and len({r.mu for r in rows}) > 1
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow((("mu",) if with_mu else ()) + CSV_COLUMNS)
        for r in rows:
            writer.writerow(((f"{r.mu:g}",) if with_mu else ()) + (
                _fmt_p(r.p), f"{r.mean_accuracy:.2f}", f"{r.std_accuracy:.2f}",
                r.trials, r.converged))
        return buf.getvalue()
    if fmt == "text":
        head = (f"{'mu':>8}  " if with_mu else "") + f"{'p':>6}  {'accuracy(%)':>11}"
        lines = [head]
        for r in rows:
            prefix = f"{r.mu:>8g}  " if with_mu else ""
            lines.append(f"{prefix}{_fmt_p(r.p):>6}  {r.mean_accuracy:>11.2f}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit(rows, fmt="text", out=None):
    """Write the table to ``out`` (a path) or standard output."""
    text = format_table(rows, fmt)
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)
