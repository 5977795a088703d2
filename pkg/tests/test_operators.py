import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from hyperlap import build, operators as ops
from hyperlap.exceptions import InvalidPError, SizeMismatchError
from test_hypergraph import hypergraphs

EPS = ops.DEFAULT_EPSILON
TRIANGLE = build([[0, 1, 2]])
PAIR = build([[0, 1]])


def flow_dict(g, F):
    es, us, vs = g.pairs
    return {(int(e), int(u), int(v)): float(x) for e, u, v, x in zip(es, us, vs, F.values)}


def test_gradient_of_constant_is_zero():
    assert np.all(ops.gradient(TRIANGLE, np.full(3, 4.2)).values == 0)


def test_gradient_entry():
    F = flow_dict(TRIANGLE, ops.gradient(TRIANGLE, [1.0, 0.0, 0.0]))
    assert F[(0, 0, 1)] == pytest.approx(-math.sqrt(1 / 3), abs=1e-15)


def test_gradient_antisymmetric():
    g = build([[0, 1, 2], [1, 3]])
    F = ops.gradient(g, np.array([0.3, -1.0, 2.0, 0.5]))
    np.testing.assert_array_equal(F.transpose().values, -F.values)


def test_divergence_of_zero_and_symmetric_flow():
    g = build([[0, 1, 2], [1, 3]])
    assert np.all(ops.divergence(g, ops.EdgeFlow(g, np.zeros(g.num_pairs))) == 0)
    rng = np.random.default_rng(0)
    F = ops.EdgeFlow(g, rng.normal(size=g.num_pairs))
    sym = ops.EdgeFlow(g, F.values + F.transpose().values)
    np.testing.assert_allclose(ops.divergence(g, sym), 0, atol=1e-14)


def test_flow_shape_checked():
    with pytest.raises(SizeMismatchError):
        ops.EdgeFlow(TRIANGLE, np.zeros(5))


def test_laplacian_example():
    np.testing.assert_allclose(ops.laplacian_apply(TRIANGLE, [1.0, 0, 0]),
                               [2 / 3, -1 / 3, -1 / 3], atol=1e-15)
    np.testing.assert_allclose(ops.laplacian_apply(TRIANGLE, np.full(3, 7.0)), 0, atol=1e-14)


def test_laplacian_matrix_pair():
    np.testing.assert_allclose(ops.laplacian_matrix(PAIR).toarray(),
                               [[0.5, -0.5], [-0.5, 0.5]], atol=1e-15)


def test_local_variation_examples():
    np.testing.assert_allclose(ops.local_variation(TRIANGLE, np.ones(3)), 1e-5, rtol=1e-12)
    lv = ops.local_variation(PAIR, [0.0, 1.0])
    assert lv[0] == pytest.approx(math.sqrt(0.5 + EPS), rel=1e-15)


def test_p_laplacian_pair_p3():
    # brute-force value, frozen: 1/2 * 1/2 * 2 sqrt(1/2 + eps) * (1 - 0)
    np.testing.assert_allclose(ops.p_laplacian_apply(PAIR, [0.0, 1.0], 3),
                               [-0.3535533906286291, 0.3535533906286291], rtol=1e-13)


def test_p_laplacian_frozen_values():
    np.testing.assert_allclose(
        ops.p_laplacian_apply(TRIANGLE, [1.0, 0, 0], 3.5),
        [0.3921597614331396, -0.1960798807165698, -0.1960798807165698], rtol=1e-13)
    np.testing.assert_allclose(
        ops.curvature_apply(TRIANGLE, [1.0, 0, 0]),
        [0.9855985595362675, -0.49279927976813376, -0.49279927976813376], rtol=1e-13)
    g = build([[0, 1, 2], [2, 3]], weights=[1.0, 2.5])
    f = [1.0, 0.0, 2.0, -1.0]
    np.testing.assert_allclose(
        ops.p_laplacian_apply(g, f, 3),
        [-0.3838303322301134, -1.9795721352705005, 15.391049483287755, -13.027647015787142],
        rtol=1e-13)
    assert ops.smoothness(g, f, 3) == pytest.approx(14.475305216861772, rel=1e-13)


def test_smoothness_example():
    # normalised with 1/(2p): half of 1/2 * sum ||d_u f||^2 = 1/2 * 4/3
    f = [1.0, 0.0, 0.0]
    assert ops.smoothness(TRIANGLE, f, 2, epsilon=0) == pytest.approx(1 / 3, rel=1e-15)
    assert np.sum(ops.local_variation(TRIANGLE, f, 0) ** 2) == pytest.approx(4 / 3, rel=1e-15)
    assert ops.smoothness(TRIANGLE, np.full(3, 2.0), 2, epsilon=0) == 0


def test_invalid_p_and_epsilon():
    with pytest.raises(InvalidPError):
        ops.p_laplacian_apply(TRIANGLE, np.zeros(3), 0.5)
    with pytest.raises(InvalidPError):
        ops.smoothness(TRIANGLE, np.zeros(3), 0.99)
    with pytest.raises(ValueError):
        ops.p_laplacian_apply(TRIANGLE, np.zeros(3), 1.5, epsilon=0)
    with pytest.raises(ValueError):
        ops.local_variation(TRIANGLE, np.zeros(3), epsilon=-1)


def test_size_mismatch():
    with pytest.raises(SizeMismatchError):
        ops.laplacian_apply(TRIANGLE, np.zeros(4))
    with pytest.raises(SizeMismatchError):
        ops.gradient(TRIANGLE, np.zeros(2))


def test_isolated_vertices_give_zero():
    g = build([[0, 1]], num_vertices=3)
    f = np.array([1.0, -2.0, 5.0])
    for p in (1, 2, 3):
        assert ops.p_laplacian_apply(g, f, p)[2] == 0
    assert ops.laplacian_apply(g, f)[2] == 0


def test_column_stacked_input():
    g = build([[0, 1, 2], [2, 3]])
    F = np.random.default_rng(3).normal(size=(4, 3))
    out = ops.p_laplacian_apply(g, F, 3)
    for k in range(3):
        np.testing.assert_allclose(out[:, k], ops.p_laplacian_apply(g, F[:, k], 3), rtol=1e-14)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(), st.sampled_from([1.0, 1.5, 2.0, 3.0, 3.7]), st.integers(0, 2**32 - 1))
def test_matches_brute_force(spec, p, seed):
    n, edges, weights = spec
    g = build(edges, weights, num_vertices=n)
    f = np.random.default_rng(seed).normal(size=n)
    scale = 1 + np.max(np.abs(oracle.p_laplacian(n, edges, weights, f, p, EPS)))
    np.testing.assert_allclose(ops.p_laplacian_apply(g, f, p),
                               oracle.p_laplacian(n, edges, weights, f, p, EPS),
                               rtol=0, atol=1e-11 * scale)
    np.testing.assert_allclose(ops.local_variation(g, f),
                               oracle.local_variation(n, edges, weights, f, EPS), rtol=1e-12)
    np.testing.assert_allclose(ops.laplacian_matrix(g).toarray(),
                               oracle.laplacian(n, edges, weights), atol=1e-12)
    np.testing.assert_allclose(ops.coefficient_matrix(g, f, p).toarray(),
                               oracle.iteration_coefficients(n, edges, weights, f, p, EPS),
                               rtol=1e-11, atol=1e-12)
    assert ops.smoothness(g, f, p) == pytest.approx(
        oracle.smoothness(n, edges, weights, f, p, EPS), rel=1e-11)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(), st.integers(0, 2**32 - 1))
def test_gradient_divergence_match_brute_force(spec, seed):
    n, edges, weights = spec
    g = build(edges, weights, num_vertices=n)
    rng = np.random.default_rng(seed)
    f = rng.normal(size=n)
    F = ops.EdgeFlow(g, rng.normal(size=g.num_pairs))
    grad = oracle.gradient(edges, weights, f)
    got = flow_dict(g, ops.gradient(g, f))
    assert got.keys() == grad.keys()
    for k in grad:
        assert got[k] == pytest.approx(grad[k], abs=1e-13)
    np.testing.assert_allclose(ops.divergence(g, F),
                               oracle.divergence(n, edges, weights, flow_dict(g, F)), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(), st.floats(1.0, 4.0), st.integers(0, 2**32 - 1), st.floats(-5, 5))
def test_conservation_and_constants(spec, p, seed, c):
    n, edges, weights = spec
    g = build(edges, weights, num_vertices=n)
    f = np.random.default_rng(seed).normal(size=n)
    out = ops.p_laplacian_apply(g, f, p)
    assert abs(out.sum()) <= 1e-10 * (1 + np.abs(out).sum())
    assert np.all(ops.p_laplacian_apply(g, np.full(n, c), p) == 0)
    assert np.all(ops.local_variation(g, f) > 0)


@settings(max_examples=40, deadline=None)
@given(hypergraphs(), st.integers(0, 2**32 - 1))
def test_symmetric_coefficients(spec, seed):
    n, edges, weights = spec
    g = build(edges, weights, num_vertices=n)
    f = np.random.default_rng(seed).normal(size=n)
    M = ops.coefficient_matrix(g, f, 3.3).toarray()
    assert np.all(M >= 0)
    np.testing.assert_allclose(M, M.T, rtol=1e-14)
    assert np.all(np.diag(M) == 0)
