import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchdual.calibration import (Chain2, MetricGraph, PLFunction, TreePoint,
                                   all_edges, chain_action, cut_z, cut_z2,
                                   extend_to_tree, extension_defect, fill_z2,
                                   lev_z, lev_z2, lev_z2_closed_form,
                                   lipschitz_defect, lipschitz_envelope,
                                   odd_bridges, orientation_rho, oriented_fill,
                                   pullback_orientation, random_lipschitz,
                                   shortest_path_metric, terminal_partition)
from matchdual.errors import (Disconnected, InfeasibleExtension, InvalidGraph,
                              NonGenericLevel, OddTerminals, RootNotInTree)
from matchdual.instances import (cycle_graph, grid_graph, path_graph,
                                 random_connected_graph, random_tree_graph,
                                 six_point_example)
from matchdual.matching import kantorovich_potential, min_matching
from matchdual.metric import FiniteMetric
from matchdual.tree import MetricTree, build_certificate, realize_tree


def graph(kind, terminals, *args):
    V, E = kind(*args)
    return MetricGraph(V, E, terminals)


def rho_f(G, tol=1e-6):
    cert = build_certificate(shortest_path_metric(G), tol)
    f0 = {t: cert.tree.embed[i] for i, t in enumerate(G.terminals)}
    f = extend_to_tree(G, cert.tree, f0, tol)
    return cert, f, pullback_orientation(G, cert.tree, f, cert.tree.embed[0])


@st.composite
def graphs(draw, tree=False, max_v=12):
    nv = draw(st.integers(2, max_v))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    if tree:
        V, E = random_tree_graph(nv, rng)
    else:
        V, E = random_connected_graph(nv, rng, extra=int(rng.integers(0, nv + 1)))
    k = 2 * draw(st.integers(1, nv // 2))
    terms = sorted(int(x) for x in rng.choice(nv, size=k, replace=False))
    return MetricGraph(V, E, terms), rng


def test_shortest_path_metric():
    assert shortest_path_metric(graph(path_graph, [0, 3], 4))[0, 1] == 3
    assert shortest_path_metric(graph(cycle_graph, [0, 3], 6))[0, 1] == 3
    assert shortest_path_metric(graph(grid_graph, [0, 8], 3, 3))[0, 1] == 4


def test_graph_validation():
    with pytest.raises(InvalidGraph):
        MetricGraph([0, 1], [(0, 1, 0.0)], [])
    with pytest.raises(InvalidGraph):
        MetricGraph([0, 1], [(0, 1, 1.0), (1, 0, 2.0)], [])
    with pytest.raises(InvalidGraph):
        MetricGraph([0, 1], [(0, 2, 1.0)], [])
    with pytest.raises(InvalidGraph):
        MetricGraph([0, 1], [(0, 0, 1.0)], [])
    with pytest.raises(Disconnected):
        shortest_path_metric(MetricGraph([0, 1, 2, 3], [(0, 1, 1.0), (2, 3, 1.0)], [0, 3]))


def test_fill_examples():
    res = fill_z2(graph(path_graph, [0, 3], 4))
    assert res.mass == 3 and len(res.chain.edges) == 3
    res = fill_z2(graph(cycle_graph, [0, 3], 6))
    assert res.mass == 3
    assert res.chain.boundary() == {0, 3}
    # corners of a 2x2 square sampled by a grid of spacing h
    for m in (2, 4, 8):
        h = 2.0 / m
        corners = [0, m, m * (m + 1), (m + 1) ** 2 - 1]
        assert fill_z2(graph(grid_graph, corners, m + 1, m + 1, h)).mass == pytest.approx(4)
    with pytest.raises(OddTerminals):
        fill_z2(graph(path_graph, [0], 3))


@settings(max_examples=40)
@given(graphs())
def test_fill_is_a_t_join(case):
    G, _ = case
    res = fill_z2(G)
    assert res.chain.boundary() == set(G.terminals)
    assert res.mass == pytest.approx(min_matching(shortest_path_metric(G)).value, abs=1e-9)
    assert res.mass <= res.matching_value + 1e-9


def test_chain_sum_is_symmetric_difference():
    G = graph(cycle_graph, [0, 3], 6)
    a = Chain2(G, frozenset({0, 1, 2}))
    b = Chain2(G, frozenset({2, 3}))
    assert (a + b).edges == frozenset({0, 1, 3})
    assert (a + a).mass == 0


def test_orientation_rho():
    T = MetricTree((0, 1), ((0, 1, 5.0),), (0, 1))
    assert orientation_rho(T, 0).values == {0: 0.0, 1: 5.0}
    star = realize_tree(six_point_example(0.0))
    rho = orientation_rho(star, star.embed[4])
    assert sorted(rho.values.values()) == [0, 1, 1, 1, 1]
    path = MetricTree((0, 1, 2), ((0, 1, 1.0), (1, 2, 1.0)), (0, 2))
    assert orientation_rho(path, 1).values == {0: 1.0, 1: 0.0, 2: 1.0}
    with pytest.raises(RootNotInTree):
        orientation_rho(path, 7)


def test_extension_identity_on_path():
    G = graph(path_graph, [0, 3], 4)
    T = MetricTree((0, 1, 2, 3), ((0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)), (0, 3))
    f = extend_to_tree(G, T, {0: 0, 3: 3})
    assert f[1] in (TreePoint(1, 1, 0.0), TreePoint(0, 1, 1.0), TreePoint(1, 2, 0.0))
    assert extension_defect(G, T, f) <= 1e-9


def test_extension_folds_cycle():
    G = graph(cycle_graph, [0, 3], 6)
    T = MetricTree((0, 1), ((0, 1, 3.0),), (0, 1))
    f = extend_to_tree(G, T, {0: 0, 3: 1})
    assert f[1].s == pytest.approx(1) and f[5].s == pytest.approx(1)
    assert f[2].s == pytest.approx(2) and f[4].s == pytest.approx(2)
    assert extension_defect(G, T, f) <= 1e-9


def test_extension_rejects_stretching():
    G = graph(path_graph, [0, 2], 3)
    T = MetricTree((0, 1), ((0, 1, 5.0),), (0, 1))
    with pytest.raises(InfeasibleExtension):
        extend_to_tree(G, T, {0: 0, 2: 1})


def test_extension_grid_into_square_certificate():
    m = 4
    h = 2.0 / m
    corners = [0, m, m * (m + 1), (m + 1) ** 2 - 1]
    G = graph(grid_graph, corners, m + 1, m + 1, h)
    cert, f, (H, phi) = rho_f(G)
    assert cert.value == pytest.approx(4)
    assert extension_defect(G, cert.tree, f) <= 1e-6
    assert lipschitz_defect(H, phi) <= 1e-6


def test_cut_z2_examples():
    G = graph(path_graph, [0, 3], 4)
    phi = PLFunction({0: 0.0, 1: 1.0, 2: 2.0, 3: 3.0})
    assert cut_z2(G, phi, 1.5) == 1
    with pytest.raises(NonGenericLevel):
        cut_z2(G, phi, 1.0)
    C = graph(cycle_graph, [0, 3], 6)
    psi = PLFunction({0: 0.0, 1: 1.0, 2: 2.0, 3: 3.0, 4: 2.0, 5: 1.0})
    assert all(cut_z2(C, psi, t) == 0 for t in (0.5, 1.5, 2.5))
    # star with four terminals matched through the centre: each level crosses one leg
    S = MetricGraph([0, 1, 2, 3, 4], [(0, i, 1.0) for i in range(1, 5)], [1, 2, 3, 4])
    rho = PLFunction({0: 0.0, 1: 1.0, 2: 1.0, 3: 1.0, 4: 1.0})
    assert cut_z2(S, rho, 0.5) == 4


def test_lev_z2_examples():
    G = graph(path_graph, [0, 3], 4)
    assert lev_z2(G, PLFunction({0: 0.0, 1: 1.0, 2: 2.0, 3: 3.0})) == pytest.approx(3)
    C = graph(cycle_graph, [0, 3], 6)
    rng = np.random.default_rng(0)
    assert all(lev_z2(C, random_lipschitz(C, rng)) == 0 for _ in range(20))


@settings(max_examples=40)
@given(graphs())
def test_lev_sweep_matches_closed_form(case):
    G, rng = case
    phi = random_lipschitz(G, rng)
    assert lev_z2(G, phi) == pytest.approx(lev_z2_closed_form(G, phi), abs=1e-9)
    fill = fill_z2(G)
    assert lev_z2(G, phi) <= fill.mass + 1e-9
    assert chain_action(fill.chain, phi) <= fill.chain.mass + 1e-9


@settings(max_examples=25)
@given(graphs(tree=True, max_v=14))
def test_tree_graph_calibration(case):
    G, _ = case
    cert, f, (H, phi) = rho_f(G)
    fill = fill_z2(G)
    assert lipschitz_defect(H, phi) <= 1e-6
    assert lev_z2(H, phi) == pytest.approx(fill.mass, abs=1e-6)
    assert fill.mass == pytest.approx(cert.value, abs=1e-9)
    refill = fill_z2(H)
    assert chain_action(refill.chain, phi) == pytest.approx(refill.mass, abs=1e-6)


def test_odd_bridges_on_cycle_with_tail():
    G = MetricGraph([0, 1, 2, 3], [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (2, 3, 1.0)], [0, 3])
    mask = odd_bridges(G)
    assert mask.tolist() == [False, False, False, True]


def test_cut_z_and_lev_z():
    G = graph(path_graph, [0, 3], 4)
    part = {"plus": [0], "minus": [3]}
    phi = PLFunction({0: 0.0, 1: 1.0, 2: 2.0, 3: 3.0})
    assert cut_z(G, phi, 1.5, part) == 1
    assert cut_z(G, phi, 3.5, part) == 0
    assert lev_z(G, phi, part) == pytest.approx(3)
    assert lev_z(G, PLFunction({v: 1.0 for v in range(4)}), part) == 0
    assert oriented_fill(G, part) == pytest.approx(3)


@settings(max_examples=40)
@given(graphs())
def test_lev_z_weak_and_strong_duality(case):
    G, rng = case
    idx = rng.permutation(len(G.terminals))
    half = len(idx) // 2
    part = {"plus": [G.terminals[i] for i in idx[:half]], "minus": [G.terminals[i] for i in idx[half:]]}
    M = oriented_fill(G, part)
    assert lev_z(G, random_lipschitz(G, rng), part) <= M + 1e-9
    f = kantorovich_potential(shortest_path_metric(G), terminal_partition(G, part))
    phi = lipschitz_envelope(G, {t: float(f[i]) for i, t in enumerate(G.terminals)})
    assert lipschitz_defect(G, phi) <= 1e-9
    assert lev_z(G, phi, part) == pytest.approx(M, abs=1e-9)


def test_chain_action_examples():
    G = graph(cycle_graph, [0, 3], 6)
    psi = PLFunction({0: 0.0, 1: 1.0, 2: 2.0, 3: 3.0, 4: 2.0, 5: 1.0})
    assert chain_action(all_edges(G), psi) == 6
    assert chain_action(Chain2(G, frozenset({0})), psi) == 1
    assert chain_action(all_edges(G), PLFunction({v: 2.0 for v in range(6)})) == 0


@settings(max_examples=30)
@given(graphs())
def test_chain_action_subadditive(case):
    G, rng = case
    a, b = random_lipschitz(G, rng), random_lipschitz(G, rng)
    C = all_edges(G)
    assert chain_action(C, a) <= C.mass + 1e-9
    mid = (a + b).scale(0.5)
    assert chain_action(C, mid) <= 0.5 * (chain_action(C, a) + chain_action(C, b)) + 1e-9
