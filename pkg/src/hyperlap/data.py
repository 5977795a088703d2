"""Dataset loaders and the native hypergraph text format.

Two input datasets are supported:

* the UCI zoo file (``zoo.data``): one animal per line, comma separated,
  name first and class type (1-7) last;
* the tiny 20-newsgroups occurrence data, as a documents-by-words text
  matrix (one line per posting, space-separated 0/1) with a line-aligned
  label file. :func:`convert_newsgroups_mat` produces this form from the
  ``20news_w100.mat`` distribution.
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import quote, unquote

import numpy as np

from .exceptions import (
    FormatVersionMismatchError,
    NonBooleanAttributeError,
    ParseError,
    SubsetTooLargeError,
)
from .hypergraph import Hypergraph, build

logger = logging.getLogger(__name__)

FORMAT_MAGIC = "hyperlap"
FORMAT_VERSION = 1

ZOO_ATTRIBUTES = (
    "hair", "feathers", "eggs", "milk", "airborne", "aquatic", "predator",
    "toothed", "backbone", "breathes", "venomous", "fins", "legs", "tail",
    "domestic", "catsize",
)
ZOO_CLASSES = ("mammal", "bird", "reptile", "fish", "amphibian", "insect", "invertebrate")


@dataclass(eq=False)
class Dataset:
    hypergraph: Hypergraph
    truth_labels: np.ndarray
    class_names: tuple
    vertex_names: tuple = None
    edge_names: tuple = None
    provenance: str = ""

    def __post_init__(self):
        self.truth_labels = np.asarray(self.truth_labels, dtype=int)
        self.class_names = tuple(self.class_names)
        if len(self.truth_labels) != self.hypergraph.num_vertices:
            raise ParseError("one truth label per vertex required")
        if len(self.truth_labels) and not (
            0 <= self.truth_labels.min() and self.truth_labels.max() < len(self.class_names)
        ):
            raise ParseError("truth labels must index class_names")
        if self.vertex_names is not None:
            self.vertex_names = tuple(self.vertex_names)
            if len(self.vertex_names) != self.hypergraph.num_vertices:
                raise ParseError("one vertex name per vertex required")
        if self.edge_names is not None:
            self.edge_names = tuple(self.edge_names)
            if len(self.edge_names) != self.hypergraph.num_edges:
                raise ParseError("one edge name per hyperedge required")

    @property
    def num_vertices(self):
        return self.hypergraph.num_vertices

    @property
    def classes(self):
        """Class indices that actually occur."""
        return np.unique(self.truth_labels)


def _build_dropping_small(named_edges, num_vertices, what):
    kept = [(name, members) for name, members in named_edges if len(members) >= 2]
    dropped = [name for name, members in named_edges if len(members) < 2]
    if dropped:
        logger.warning("dropping %d %s with fewer than 2 members: %s",
                       len(dropped), what, ", ".join(dropped))
    g = build([m for _, m in kept], num_vertices=num_vertices)
    return g, tuple(name for name, _ in kept)


def load_zoo(path, include_zero_edges=False):
    """Load the UCI zoo file as a hypergraph with one vertex per animal.

    Every boolean attribute contributes the hyperedge of animals having it;
    ``legs`` contributes one hyperedge per distinct leg count. With
    ``include_zero_edges`` each boolean attribute also contributes the
    hyperedge of animals lacking it. The class column never forms an edge.
    """
    path = Path(path)
    names, rows, types = [], [], []
    with path.open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or not "".join(row).strip():
                continue
            if len(row) != len(ZOO_ATTRIBUTES) + 2:
                raise ParseError(f"{path}:{lineno}: expected {len(ZOO_ATTRIBUTES) + 2} "
                                 f"columns, got {len(row)}")
            try:
                values = [int(x) for x in row[1:]]
            except ValueError:
                raise ParseError(f"{path}:{lineno}: non-integer attribute") from None
            names.append(row[0].strip())
            rows.append(values[:-1])
            types.append(values[-1])
            for attr, x in zip(ZOO_ATTRIBUTES, values[:-1]):
                if attr != "legs" and x not in (0, 1):
                    raise NonBooleanAttributeError(f"{path}:{lineno}: {attr}={x}")
            if not 1 <= values[-1] <= len(ZOO_CLASSES):
                raise ParseError(f"{path}:{lineno}: class type {values[-1]} not in 1..7")

    X = np.array(rows, dtype=int).reshape(len(rows), len(ZOO_ATTRIBUTES))
    named_edges = []
    for j, attr in enumerate(ZOO_ATTRIBUTES):
        col = X[:, j]
        if attr == "legs":
            for value in np.unique(col):
                named_edges.append((f"legs={value}", np.flatnonzero(col == value)))
            continue
        named_edges.append((attr, np.flatnonzero(col == 1)))
        if include_zero_edges:
            named_edges.append((f"{attr}=0", np.flatnonzero(col == 0)))

    g, edge_names = _build_dropping_small(named_edges, len(rows), "attribute edges")
    return Dataset(
        hypergraph=g,
        truth_labels=np.array(types) - 1,
        class_names=ZOO_CLASSES,
        vertex_names=names,
        edge_names=edge_names,
        provenance=f"UCI zoo ({path.name}), zero edges {'on' if include_zero_edges else 'off'}",
    )


def _sort_key(token):
    return (0, int(token), "") if token.lstrip("-").isdigit() else (1, 0, token)


def stratified_subset(labels, subset_size, rng):
    """Sorted indices of ``subset_size`` items, spread evenly over classes.

    Each class gets ``subset_size // k`` items and the first
    ``subset_size % k`` classes one more.
    """
    classes = np.unique(labels)
    base, extra = divmod(subset_size, len(classes))
    chosen = []
    for i, c in enumerate(classes):
        members = np.flatnonzero(labels == c)
        want = base + (1 if i < extra else 0)
        if want > len(members):
            raise SubsetTooLargeError(
                f"class {c} has {len(members)} items, {want} requested"
            )
        chosen.append(rng.choice(members, size=want, replace=False))
    return np.sort(np.concatenate(chosen))


def load_newsgroups(path, subset_size=200, seed=0, labels_path=None, words_path=None):
    """Load a seeded, class-stratified subset of the tiny 20-newsgroups data.

    ``path`` holds one 0/1 row per posting (one column per word). Labels
    default to ``path`` with suffix ``.labels`` (one token per line) and
    optional word names to ``.words``. Each word becomes the hyperedge of
    selected postings that contain it; words in fewer than two of them are
    dropped.
    """
    path = Path(path)
    labels_path = path.with_suffix(".labels") if labels_path is None else Path(labels_path)
    words_path = path.with_suffix(".words") if words_path is None else Path(words_path)

    try:
        X = np.loadtxt(path, dtype=np.int8, ndmin=2)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not np.isin(X, (0, 1)).all():
        raise ParseError(f"{path}: occurrence matrix must be 0/1")
    tokens = [line.strip() for line in labels_path.read_text().splitlines() if line.strip()]
    if len(tokens) != X.shape[0]:
        raise ParseError(f"{labels_path}: {len(tokens)} labels for {X.shape[0]} postings")
    words = None
    if words_path.exists():
        words = [w.strip() for w in words_path.read_text().splitlines() if w.strip()]
        if len(words) != X.shape[1]:
            raise ParseError(f"{words_path}: {len(words)} words for {X.shape[1]} columns")
    else:
        words = [f"w{j}" for j in range(X.shape[1])]

    class_names = tuple(sorted(set(tokens), key=_sort_key))
    index = {c: k for k, c in enumerate(class_names)}
    labels = np.array([index[t] for t in tokens])

    if subset_size > X.shape[0]:
        raise SubsetTooLargeError(f"subset of {subset_size} from {X.shape[0]} postings")
    rng = np.random.default_rng(seed)
    chosen = stratified_subset(labels, subset_size, rng)
    sub = X[chosen]
    named_edges = [(words[j], np.flatnonzero(sub[:, j])) for j in range(sub.shape[1])]
    g, edge_names = _build_dropping_small(named_edges, len(chosen), "word edges")
    return Dataset(
        hypergraph=g,
        truth_labels=labels[chosen],
        class_names=class_names,
        vertex_names=tuple(f"post{i}" for i in chosen),
        edge_names=edge_names,
        provenance=f"tiny 20newsgroups ({path.name}), {subset_size} postings, seed {seed}",
    )


def convert_newsgroups_mat(mat_path, out_path):
    """Write ``20news_w100.mat`` as ``out_path`` plus ``.labels``/``.words`` siblings.

    The ``.mat`` file holds ``documents`` (words x postings, sparse 0/1),
    ``wordlist``, ``newsgroups`` (1-based group per posting) and
    ``groupnames``. Returns the paths written.
    """
    from scipy.io import loadmat

    mat = loadmat(mat_path)
    docs = mat["documents"]
    docs = docs.toarray() if hasattr(docs, "toarray") else np.asarray(docs)
    words = [str(np.ravel(w)[0]).strip() for w in np.ravel(mat["wordlist"])]
    groups = [str(np.ravel(n)[0]).strip() for n in np.ravel(mat["groupnames"])]
    labels = np.ravel(mat["newsgroups"]).astype(int)
    if docs.shape[0] == len(words) and docs.shape[1] == len(labels):
        docs = docs.T
    if docs.shape != (len(labels), len(words)):
        raise ParseError(f"{mat_path}: documents shape {docs.shape} does not match "
                         f"{len(labels)} postings x {len(words)} words")

    out_path = Path(out_path)
    np.savetxt(out_path, (docs != 0).astype(np.int8), fmt="%d")
    labels_path = out_path.with_suffix(".labels")
    labels_path.write_text("".join(f"{groups[k - 1]}\n" for k in labels))
    words_path = out_path.with_suffix(".words")
    words_path.write_text("".join(f"{w}\n" for w in words))
    return out_path, labels_path, words_path


EMPTY_NAME = '""'  # quote() never emits a bare double quote


def _names_line(kind, names):
    tokens = (quote(str(n), safe="") or EMPTY_NAME for n in names)
    return " ".join(["names", kind, *tokens])


def _unquote(token):
    return "" if token == EMPTY_NAME else unquote(token)


def save_hypergraph(dataset, path):
    """Write ``dataset`` in the native line-oriented format."""
    g = dataset.hypergraph
    lines = [f"{FORMAT_MAGIC}-v{FORMAT_VERSION} {g.num_vertices} {g.num_edges} "
             f"{len(dataset.class_names)}"]
    for w, members in zip(g.edge_weights, g.edges):
        lines.append(" ".join(["edge", repr(float(w)), *map(str, members)]))
    lines.append(" ".join(["labels", *map(str, dataset.truth_labels)]))
    lines.append(_names_line("classes", dataset.class_names))
    if dataset.vertex_names is not None:
        lines.append(_names_line("vertices", dataset.vertex_names))
    if dataset.edge_names is not None:
        lines.append(_names_line("edges", dataset.edge_names))
    if dataset.provenance:
        lines.append(_names_line("provenance", [dataset.provenance]))
    Path(path).write_text("\n".join(lines) + "\n")


def load_hypergraph(path):
    """Read a dataset written by :func:`save_hypergraph`."""
    path = Path(path)
    lines = [line.split() for line in path.read_text().splitlines() if line.strip()]
    if not lines:
        raise ParseError(f"{path}: empty file")
    header = lines[0]
    if len(header) != 4 or not header[0].startswith(f"{FORMAT_MAGIC}-v"):
        raise ParseError(f"{path}: not a {FORMAT_MAGIC} file")
    if header[0] != f"{FORMAT_MAGIC}-v{FORMAT_VERSION}":
        raise FormatVersionMismatchError(f"{path}: unsupported format {header[0]}")
    try:
        n, m, k = (int(x) for x in header[1:])
        edges, weights, labels, names = [], [], None, {}
        for fields in lines[1:]:
            tag = fields[0]
            if tag == "edge":
                weights.append(float(fields[1]))
                edges.append([int(x) for x in fields[2:]])
            elif tag == "labels":
                labels = [int(x) for x in fields[1:]]
            elif tag == "names":
                names[fields[1]] = tuple(_unquote(x) for x in fields[2:])
            else:
                raise ParseError(f"{path}: unknown record {tag!r}")
    except (ValueError, IndexError):
        raise ParseError(f"{path}: malformed record") from None

    if len(edges) != m:
        raise ParseError(f"{path}: header declares {m} edges, found {len(edges)}")
    if labels is None or len(labels) != n:
        raise ParseError(f"{path}: expected {n} labels")
    class_names = names.get("classes", tuple(str(i) for i in range(k)))
    if len(class_names) != k:
        raise ParseError(f"{path}: header declares {k} classes, found {len(class_names)}")
    g = build(edges, weights=weights, num_vertices=n)
    provenance = names.get("provenance", ("",))
    return Dataset(
        hypergraph=g,
        truth_labels=labels,
        class_names=class_names,
        vertex_names=names.get("vertices"),
        edge_names=names.get("edges"),
        provenance=provenance[0] if provenance else "",
    )


def load_dataset(path, kind, include_zero_edges=False, subset_size=200, seed=0):
    if kind == "zoo":
        return load_zoo(path, include_zero_edges=include_zero_edges)
    if kind == "newsgroups":
        return load_newsgroups(path, subset_size=subset_size, seed=seed)
    if kind == "native":
        return load_hypergraph(path)
    raise ValueError(f"unknown dataset kind {kind!r}")
