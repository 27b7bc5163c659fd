import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchdual.dimension import (ScalingSeries, comb_tree, cube_experiment,
                                 fit_dimension, grid_points, m_eps, m_k)
from matchdual.errors import (InsufficientData, InvalidExponent, OddK,
                              SlopeOutOfRange, TooLargeForExhaustive)
from matchdual.instances import random_metric, square_metric
from matchdual.matching import all_matchings, min_matching, Matching
from matchdual.metric import from_points, restrict
from strategies import metrics


def test_m_k_square():
    sq = square_metric()
    assert m_k(sq, 2) == pytest.approx(2 * math.sqrt(2))
    assert m_k(sq, 4) == pytest.approx(4)
    assert m_k(sq, 4, "greedy") == pytest.approx(4)
    with pytest.raises(OddK):
        m_k(sq, 3)


def test_m_k_limit():
    with pytest.raises(TooLargeForExhaustive):
        m_k(random_metric(30, np.random.default_rng(0)), 8)


def test_m_eps_square():
    sq = square_metric()
    assert m_eps(sq, 2) == pytest.approx(4)
    assert m_eps(sq, 3) == 0
    assert m_eps(sq, 10) == 0


@settings(max_examples=20)
@given(metrics(2, 6))
def test_m_k_two_is_diameter(M):
    assert m_k(M, 2) == pytest.approx(M.diameter())


@settings(max_examples=20)
@given(metrics(2, 5))
def test_monotonicity(M):
    vals = [m_k(M, k) for k in (2, 4, 6)]
    assert all(a <= b + 1e-9 for a, b in zip(vals, vals[1:]))
    assert all(v <= M.diameter() * k / 2 + 1e-9 for v, k in zip(vals, (2, 4, 6)))
    eps = sorted(set(np.round(M.dist[np.triu_indices(M.n, 1)], 12)))
    me = [m_eps(M, e) for e in eps]
    assert all(a >= b - 1e-9 for a, b in zip(me, me[1:]))


@settings(max_examples=15)
@given(metrics(3, 6), st.data())
def test_restriction_monotone(M, data):
    keep = data.draw(st.lists(st.integers(0, M.n - 1), min_size=2, max_size=M.n, unique=True))
    A = restrict(M, keep)
    assert m_k(A, 4) <= m_k(M, 4) + 1e-9


@settings(max_examples=15)
@given(st.integers(0, 2**31), st.floats(0.1, 1.0))
def test_lipschitz_image(seed, lam):
    P = np.random.default_rng(seed).random((6, 2))
    M = from_points(P)
    proj = from_points(P[:, :1])          # projection is 1-Lipschitz
    scaled = from_points(lam * P)
    for k in (2, 4):
        assert m_k(proj, k) <= m_k(M, k) + 1e-9
        assert m_k(scaled, k) == pytest.approx(lam * m_k(M, k), abs=1e-9)


def test_comb_tree_profile():
    tree, tips = comb_tree(2, 4)
    assert [tree.partial_sum(k) for k in range(1, 5)] == pytest.approx([1, math.sqrt(2), math.sqrt(3), 2])
    assert list(tree.legs) == sorted(tree.legs, reverse=True)
    for k in range(1, 5):
        sub = restrict(tips, range(2 * k))
        values = {round(Matching(m).value(sub), 12) for m in all_matchings(2 * k)}
        assert values == {round(tree.partial_sum(k), 12)}


def test_comb_tree_exponent_one():
    tree, _ = comb_tree(1, 1)
    assert tree.legs == (0.5, 0.5)
    with pytest.raises(InvalidExponent):
        comb_tree(1, 3)
    with pytest.raises(InvalidExponent):
        comb_tree(0.5, 3)


def test_fit_exact_comb():
    tree, _ = comb_tree(2, 32)
    s = ScalingSeries()
    for k in range(1, 33):
        s.add(k, tree.partial_sum(k), "exact")
    fit = fit_dimension(s)
    assert fit.n_hat == pytest.approx(2, abs=1e-6)
    assert fit.monotone


def test_fit_edge_cases():
    flat = [(k, 3.0) for k in (2, 4, 8)]
    assert fit_dimension(flat).n_hat == 1
    steep = [(k, float(k) ** 1.2) for k in (2, 4, 8)]
    assert fit_dimension(steep).n_hat == math.inf
    with pytest.raises(SlopeOutOfRange):
        fit_dimension(steep, strict=True)
    with pytest.raises(InsufficientData):
        fit_dimension([(2, 1.0), (4, 2.0)])
    assert not fit_dimension([(2, 1.0), (4, 3.0), (8, 2.0)]).monotone


def test_line_is_bounded():
    for k in (4, 8, 16):
        x = np.linspace(0, 1, k)
        assert min_matching(from_points(x)).value == pytest.approx(0.5 * k / (k - 1))


def test_cube_rows_are_reproducible():
    a = cube_experiment(2, [4, 8], trials=2, seed=5, methods=("fps", "grid"))
    b = cube_experiment(2, [4, 8], trials=2, seed=5, methods=("fps", "grid"))
    assert a.rows == b.rows
    assert a.to_csv().splitlines()[0] == "k,value,mode,trial,seed"
    single = cube_experiment(2, [2], trials=1, seed=0)
    assert 0 < single.rows[0].value <= math.sqrt(2)


def test_grid_points_are_separated():
    rng = np.random.default_rng(0)
    for k in (8, 32, 50):
        P = grid_points(k, 2, rng)
        side = math.ceil(k ** 0.5)
        M = from_points(P)
        assert min_matching(M).value >= (1 / side) * k / 2 - 1e-9
