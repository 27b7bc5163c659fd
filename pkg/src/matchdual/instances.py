"""Named instances and seeded random generators."""

from __future__ import annotations

import numpy as np

from .metric import FiniteMetric, from_points, shortest_path_closure


def six_point_example(eps: float = 1.0) -> FiniteMetric:
    """Points 0..3 pairwise at distance 2, each at distance 1 from 4 and 5; d(4,5) = eps."""
    d = np.full((6, 6), 2.0)
    d[:4, 4:] = 1.0
    d[4:, :4] = 1.0
    d[4, 5] = d[5, 4] = eps
    np.fill_diagonal(d, 0.0)
    return FiniteMetric(d)


def square_corners() -> np.ndarray:
    return np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, -1.0], [-1.0, 1.0]])


def square_metric(norm="l2") -> FiniteMetric:
    return from_points(square_corners(), norm)


def line_metric(coords) -> FiniteMetric:
    x = np.asarray(coords, dtype=float)
    return FiniteMetric(np.abs(x[:, None] - x[None, :]))


def cycle_hop_metric(n: int) -> FiniteMetric:
    i = np.arange(n)
    gap = np.abs(i[:, None] - i[None, :])
    return FiniteMetric(np.minimum(gap, n - gap).astype(float))


def random_metric(n: int, rng: np.random.Generator, low: float = 0.0, high: float = 1.0) -> FiniteMetric:
    """Uniform symmetric entries repaired to a pseudometric by shortest paths."""
    a = rng.uniform(low, high, size=(n, n))
    a = np.triu(a, 1)
    return FiniteMetric(shortest_path_closure(a + a.T))


def random_integer_metric(n: int, rng: np.random.Generator, high: int = 4) -> FiniteMetric:
    """Tie-heavy instances: integer entries in ``[1, high]`` closed under shortest paths."""
    a = np.triu(rng.integers(1, high + 1, size=(n, n)).astype(float), 1)
    return FiniteMetric(shortest_path_closure(a + a.T))


def random_points(n: int, rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    return rng.random((n, dim))


def geometric_truncation(N: int) -> np.ndarray:
    """``{0} ∪ {2^-i : 1 <= i <= N}``, padded with ``2^-(N+1)`` when the count is odd."""
    pts = [0.0] + [2.0 ** -i for i in range(1, N + 1)]
    if len(pts) % 2:
        pts.append(2.0 ** -(N + 1))
    return np.array(pts)


# ---------------------------------------------------------------------------
# graphs: (vertices, edges) with edges as (u, v, length)


def path_graph(n: int, length: float = 1.0):
    return list(range(n)), [(i, i + 1, length) for i in range(n - 1)]


def cycle_graph(n: int, length: float = 1.0):
    return list(range(n)), [(i, (i + 1) % n, length) for i in range(n)]


def grid_graph(rows: int, cols: int, h: float = 1.0):
    vid = lambda r, c: r * cols + c
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1), h))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c), h))
    return list(range(rows * cols)), edges


def random_tree_graph(n: int, rng: np.random.Generator, low: float = 0.1, high: float = 1.0):
    """Random recursive tree with uniform edge lengths."""
    edges = [(int(rng.integers(0, v)), v, float(rng.uniform(low, high))) for v in range(1, n)]
    return list(range(n)), edges


def random_connected_graph(n: int, rng: np.random.Generator, extra: int | None = None,
                           low: float = 0.1, high: float = 1.0):
    """Random tree plus ``extra`` chords (no parallel edges)."""
    verts, edges = random_tree_graph(n, rng, low, high)
    seen = {(min(u, v), max(u, v)) for u, v, _ in edges}
    extra = n // 2 if extra is None else extra
    tries = 0
    while extra > 0 and tries < 50 * n:
        tries += 1
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        edges.append((u, v, float(rng.uniform(low, high))))
        extra -= 1
    return verts, edges
