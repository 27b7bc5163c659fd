import numpy as np
import pytest
from hypothesis import given, settings

from matchdual.dual import (dual_via_descent, interval_family, minimize_dual,
                            verify_dual)
from matchdual.errors import IterationLimit, OddCardinality, StallDetected
from matchdual.instances import (cycle_hop_metric, random_metric,
                                 six_point_example, square_metric)
from matchdual.matching import min_matching
from matchdual.metric import (FiniteMetric, is_tree_like, metric_delta,
                              triangle_slack)
from strategies import metrics


def expected_six_point_dual():
    D = six_point_example().dist.copy()
    D[4, 5] = D[5, 4] = 0.0
    return D


def test_six_point_dual():
    res = minimize_dual(six_point_example())
    assert np.max(np.abs(res.D.dist - expected_six_point_dual())) <= 1e-6
    assert res.m == 4
    assert metric_delta(six_point_example(), res.D) == pytest.approx(1.0)
    assert verify_dual(six_point_example(), res.D).ok


def test_two_points_unchanged():
    M = FiniteMetric([[0, 5], [5, 0]])
    res = minimize_dual(M)
    assert res.D == M
    assert res.w_value == 5


def test_cycle_dual():
    M = cycle_hop_metric(6)
    res = minimize_dual(M)
    rep = verify_dual(M, res.D)
    assert rep.ok
    assert rep.m_D == pytest.approx(3)
    # the star with all leaves at 1/2 from a centre is feasible, so w cannot exceed its value
    assert res.w_value <= 15 * 1.0 + 1e-9


def test_odd_rejected():
    with pytest.raises(OddCardinality):
        minimize_dual(FiniteMetric(np.ones((3, 3)) - np.eye(3)))


def test_cut_cap():
    with pytest.raises(IterationLimit):
        minimize_dual(random_metric(8, np.random.default_rng(3)), max_cuts=1)


def test_frozen_w_values(oracles):
    for case in oracles["dual"]:
        M = FiniteMetric(case["d"])
        res = minimize_dual(M)
        assert res.m == pytest.approx(case["m"], abs=1e-9)
        assert res.w_value == pytest.approx(case["w"], abs=1e-6)


def test_verify_detects_non_tree_like():
    sq = square_metric()
    rep = verify_dual(sq, sq)
    assert not rep.tree_like
    assert rep.matching_number_preserved
    zero = FiniteMetric(np.zeros((4, 4)))
    assert not verify_dual(sq, zero).matching_number_preserved


@settings(max_examples=25)
@given(metrics(4, 8, even=True))
def test_dual_invariants(M):
    res = minimize_dual(M)
    D = res.D.dist
    assert np.all(D <= M.dist + 1e-9)
    assert triangle_slack(D)[0] >= -1e-7
    assert is_tree_like(res.D, 1e-6).tree_like
    assert min_matching(res.D).value == pytest.approx(min_matching(M).value, abs=1e-6)
    assert res.w_value <= M.dist[np.triu_indices(M.n, 1)].sum() + 1e-9
    for cut in res.cuts:
        assert cut.value(res.D) >= res.m - 1e-7
    assert verify_dual(M, res.D).all_pairs_minimal


@settings(max_examples=10)
@given(metrics(4, 8, even=True))
def test_dual_idempotent(M):
    D = minimize_dual(M).D
    again = minimize_dual(D).D
    assert metric_delta(D, again) <= 1e-6


def test_interval_family_contains_pair():
    D = six_point_example().dist
    fam = interval_family(D, 4, 5, 1e-9)
    assert fam[4, 5] and fam.sum() == 2


def test_descent_six_point():
    res = dual_via_descent(six_point_example())
    assert np.max(np.abs(res.D.dist - expected_six_point_dual())) <= 1e-6


def test_descent_fixed_point():
    D = FiniteMetric(expected_six_point_dual())
    res = dual_via_descent(D)
    assert metric_delta(res.D, D) == 0


@settings(max_examples=15)
@given(metrics(6, 6))
def test_descent_cross_check(M):
    lp = minimize_dual(M)
    try:
        res = dual_via_descent(M)
    except StallDetected as exc:
        res = exc.result
        assert not is_tree_like(res.D).tree_like
    # descent is feasible but may stop above the LP optimum
    assert res.w_value >= lp.w_value - 1e-6
    assert np.all(res.D.dist <= M.dist + 1e-9)
    assert min_matching(res.D).value == pytest.approx(lp.m, abs=1e-6)
