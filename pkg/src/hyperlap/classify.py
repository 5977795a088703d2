"""One-vs-rest label encoding, decision rule and accuracy."""

from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyEvalSetError, SizeMismatchError, UnknownClassError


@dataclass(frozen=True)
class LabelMatrix:
    """Seed functions, one column per class.

    ``columns[v, k]`` is +1 if vertex ``v`` is labeled with ``classes[k]``,
    -1 if it is labeled with another class, and 0 if it is unlabeled.
    """

    classes: tuple
    columns: np.ndarray


@dataclass(frozen=True)
class Prediction:
    scores: np.ndarray
    assigned_class: np.ndarray


def encode_labels(labels, labeled_mask, classes):
    labels = np.asarray(labels)
    labeled_mask = np.asarray(labeled_mask, dtype=bool)
    if labels.shape != labeled_mask.shape:
        raise SizeMismatchError("labels and labeled_mask differ in length")
    classes = tuple(classes)
    index = {c: k for k, c in enumerate(classes)}
    Y = np.zeros((len(labels), len(classes)))
    for v in np.flatnonzero(labeled_mask):
        try:
            k = index[labels[v]]
        except KeyError:
            raise UnknownClassError(f"vertex {v} has label {labels[v]!r} not in classes") from None
        Y[v] = -1.0
        Y[v, k] = 1.0
    return LabelMatrix(classes=classes, columns=Y)


def predict(per_class_f, classes=None):
    """Assign each vertex the class with the largest score.

    ``per_class_f`` is an ``(n, k)`` array or a list of ``k`` vertex
    functions. Ties go to the lowest column. With a single column the
    decision is the sign of the score (-1, 0 or +1).
    """
    if isinstance(per_class_f, (list, tuple)):
        lengths = {len(col) for col in per_class_f}
        if len(lengths) > 1:
            raise SizeMismatchError("class score columns differ in length")
        scores = np.column_stack([np.asarray(c, dtype=float) for c in per_class_f])
    else:
        scores = np.asarray(per_class_f, dtype=float)
        if scores.ndim == 1:
            scores = scores[:, None]
    if scores.ndim != 2 or scores.shape[1] == 0:
        raise SizeMismatchError("need an (n, k) score array with k >= 1")

    if scores.shape[1] == 1:
        assigned = np.sign(scores[:, 0]).astype(int)
    else:
        assigned = np.argmax(scores, axis=1)
        if classes is not None:
            assigned = np.asarray(classes)[assigned]
    return Prediction(scores=scores, assigned_class=assigned)


def accuracy(predicted, truth, eval_mask):
    """Fraction of ``eval_mask`` vertices whose predicted class equals the truth."""
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    eval_mask = np.asarray(eval_mask, dtype=bool)
    if not predicted.shape == truth.shape == eval_mask.shape:
        raise SizeMismatchError("predicted, truth and eval_mask must have equal length")
    if not eval_mask.any():
        raise EmptyEvalSetError("no vertices selected for evaluation")
    return float(np.mean(predicted[eval_mask] == truth[eval_mask]))


def stratified_labeled_mask(labels, fraction, rng):
    """Pick ``round(fraction * n_c)`` vertices of every class ``c``, at least one each."""
    if not 0 < fraction < 1:
        raise ValueError(f"labeled fraction must lie in (0, 1), got {fraction!r}")
    labels = np.asarray(labels)
    mask = np.zeros(len(labels), dtype=bool)
    for c in np.unique(labels):
        members = np.flatnonzero(labels == c)
        k = max(1, int(round(fraction * len(members))))
        mask[rng.choice(members, size=min(k, len(members)), replace=False)] = True
    return mask
