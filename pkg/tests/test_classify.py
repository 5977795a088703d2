import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperlap import accuracy, encode_labels, predict
from hyperlap.classify import stratified_labeled_mask
from hyperlap.exceptions import EmptyEvalSetError, SizeMismatchError, UnknownClassError


def test_encode_one_labeled():
    lm = encode_labels(["A", "B", "A"], [True, False, False], ["A", "B"])
    np.testing.assert_array_equal(lm.columns[:, 0], [1, 0, 0])
    np.testing.assert_array_equal(lm.columns[:, 1], [-1, 0, 0])


def test_encode_all_unlabeled():
    lm = encode_labels([0, 1, 2], [False] * 3, [0, 1, 2])
    assert not lm.columns.any()


def test_encode_unknown_class():
    with pytest.raises(UnknownClassError):
        encode_labels(["A", "C"], [True, True], ["A", "B"])
    # unlabeled vertices may carry anything
    encode_labels(["A", "C"], [True, False], ["A", "B"])


def test_encode_zoo_shape(zoo_path):
    from hyperlap import load_zoo
    ds = load_zoo(zoo_path)
    lm = encode_labels(ds.truth_labels, np.ones(101, bool), range(7))
    assert lm.columns.shape == (101, 7)


def test_predict_sign():
    np.testing.assert_array_equal(predict([[0.3, -0.2]]).assigned_class, [1, -1])


def test_predict_tie_goes_to_first():
    col = [0.5, -1.0, 0.0]
    np.testing.assert_array_equal(predict([col, col]).assigned_class, [0, 0, 0])


def test_predict_argmax():
    out = predict(np.array([[0.1, 0.9], [0.9, 0.1]]), classes=["A", "B"])
    assert list(out.assigned_class) == ["B", "A"]


def test_predict_mismatched_columns():
    with pytest.raises(SizeMismatchError):
        predict([[1.0, 2.0], [1.0]])


def test_accuracy_examples():
    assert accuracy([1, 2, 3], [1, 2, 3], [True] * 3) == 1.0
    assert accuracy([0, 1, 0, 1], [0, 0, 1, 1], [True] * 4) == 0.5
    assert accuracy([0, 9, 0], [0, 1, 0], [True, False, True]) == 1.0
    with pytest.raises(EmptyEvalSetError):
        accuracy([0], [0], [False])


def test_stratified_mask_covers_every_class():
    labels = np.array([0] * 41 + [1] * 20 + [2] * 5 + [3] * 4)
    mask = stratified_labeled_mask(labels, 0.2, np.random.default_rng(0))
    assert [int(mask[labels == c].sum()) for c in range(4)] == [8, 4, 1, 1]
    with pytest.raises(ValueError):
        stratified_labeled_mask(labels, 1.0, np.random.default_rng(0))


scores = st.lists(st.lists(st.floats(-10, 10), min_size=3, max_size=3), min_size=1, max_size=20)


@given(scores, st.floats(1e-3, 1e3))
def test_argmax_scale_invariance(rows, c):
    S = np.array(rows)
    np.testing.assert_array_equal(predict(S).assigned_class, predict(c * S).assigned_class)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=30))
def test_encode_predict_round_trip(labels):
    lm = encode_labels(labels, np.ones(len(labels), bool), range(5))
    np.testing.assert_array_equal(predict(lm.columns).assigned_class, labels)
    assert (lm.columns == 1).sum(axis=1).tolist() == [1] * len(labels)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=30), st.data())
def test_accuracy_range(truth, data):
    n = len(truth)
    pred = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    mask = data.draw(st.lists(st.booleans(), min_size=n, max_size=n).filter(any))
    assert 0 <= accuracy(pred, truth, mask) <= 1
    assert accuracy(truth, truth, mask) == 1
