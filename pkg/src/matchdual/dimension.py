"""Matching numbers of sub-configurations and scaling experiments."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import NamedTuple, Sequence

import networkx as nx
import numpy as np
from scipy import stats

from .errors import (InsufficientData, InvalidExponent, OddK,
                     SlopeOutOfRange, TooLargeForExhaustive)
from .matching import all_matchings, min_matching
from .metric import FiniteMetric, from_points, restrict
from .tree import MetricTree

EXHAUSTIVE_LIMIT = 200_000
MIN_LEG = 1e-12


class Row(NamedTuple):
    k: float
    value: float
    mode: str
    trial: int
    seed: int


@dataclass
class ScalingSeries:
    rows: list[Row] = field(default_factory=list)
    param: str = "k"

    def add(self, k, value, mode, trial=0, seed=0):
        self.rows.append(Row(k, float(value), mode, int(trial), int(seed)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([self.param, "value", "mode", "trial", "seed"])
        for r in self.rows:
            w.writerow([repr(r.k) if isinstance(r.k, float) else r.k, repr(r.value), r.mode, r.trial, r.seed])
        return buf.getvalue()

    def means(self) -> tuple[np.ndarray, np.ndarray]:
        ks = sorted({r.k for r in self.rows})
        return np.array(ks, dtype=float), np.array([np.mean([r.value for r in self.rows if r.k == k])
                                                    for k in ks])


def _check_k(k: int) -> int:
    if k < 0 or k % 2:
        raise OddK(f"k must be a nonnegative even count, got {k}")
    return int(k)


def _matching_values(d: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """Matching number of each row of ``subsets`` (indices into ``d``), by brute force over pairings."""
    k = subsets.shape[1]
    best = np.full(len(subsets), np.inf)
    for pairing in all_matchings(k):
        val = np.zeros(len(subsets))
        for a, b in pairing:
            val += d[subsets[:, a], subsets[:, b]]
        np.minimum(best, val, out=best)
    return best


def m_k(metric: FiniteMetric, k: int, mode: str = "exhaustive", seed: int = 0,
        restarts: int = 8, limit: int = EXHAUSTIVE_LIMIT) -> float:
    """``sup m(X', d)`` over ``k``-point sub-multisets ``X'``.

    ``greedy`` is a lower bound from farthest-point sampling over plain
    subsets (repeated points only add zero-length pairs).
    """
    k = _check_k(k)
    if k == 0:
        return 0.0
    n = metric.n
    d = np.asarray(metric.dist, dtype=float)
    if mode == "exhaustive":
        count = math.comb(n + k - 1, k)
        if count > limit or k > 10:
            raise TooLargeForExhaustive(f"{count} sub-multisets of size {k} from {n} points")
        best = 0.0
        it = combinations_with_replacement(range(n), k)
        while True:
            chunk = np.array([c for _, c in zip(range(20_000), it)], dtype=int)
            if len(chunk) == 0:
                return best
            best = max(best, float(_matching_values(d, chunk.reshape(len(chunk), k)).max()))
    if mode != "greedy":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    size = min(k, n) - min(k, n) % 2
    if size == 0:
        return 0.0
    starts = rng.choice(n, size=min(restarts, n), replace=False)
    best = 0.0
    for s in starts:
        pick = farthest_point_order(d, int(s), size)
        best = max(best, min_matching(restrict(metric, pick)).value)
    return best


def farthest_point_order(d: np.ndarray, start: int, count: int) -> list[int]:
    """Greedy farthest-point sampling on a distance matrix."""
    pick = [start]
    near = d[start].copy()
    for _ in range(count - 1):
        j = int(np.argmax(near))
        pick.append(j)
        near = np.minimum(near, d[j])
    return pick


def m_eps(metric: FiniteMetric, eps: float, mode: str = "exhaustive", seed: int = 0,
          restarts: int = 8, limit_n: int = 18) -> float:
    """``sup m(X', d)`` over ``eps``-separated subsets of even size (0 if there are none)."""
    n = metric.n
    d = np.asarray(metric.dist, dtype=float)
    ok = d >= eps
    np.fill_diagonal(ok, False)
    if not ok.any():
        return 0.0
    if mode == "exhaustive":
        if n > limit_n:
            raise TooLargeForExhaustive(f"exhaustive eps-separated search is limited to {limit_n} points")
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(zip(*np.nonzero(np.triu(ok, 1))))
        best = 0.0
        for clique in nx.enumerate_all_cliques(g):
            if len(clique) % 2 == 0:
                best = max(best, min_matching(restrict(metric, clique)).value)
        return best
    if mode != "greedy":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    best = 0.0
    for s in rng.choice(n, size=min(restarts, n), replace=False):
        pick = [int(s)]
        near = d[s].copy()
        while True:
            j = int(np.argmax(near))
            if near[j] < eps:
                break
            pick.append(j)
            near = np.minimum(near, d[j])
        if len(pick) % 2:
            pick.pop()
        if pick:
            best = max(best, min_matching(restrict(metric, pick)).value)
    return best


# ---------------------------------------------------------------------------
# Comb trees


@dataclass(frozen=True)
class CombTree:
    """Star with legs ``eps_1 >= eps_2 >= ...`` so that ``sum_{m<=2k} eps_m = k^((n-1)/n)``."""

    exponent: float
    legs: tuple[float, ...]

    @property
    def K(self) -> int:
        return len(self.legs) // 2

    def partial_sum(self, k: int) -> float:
        return float(math.fsum(self.legs[: 2 * k]))

    def tips_metric(self, count: int | None = None) -> FiniteMetric:
        legs = np.array(self.legs[: count if count is not None else len(self.legs)])
        d = legs[:, None] + legs[None, :]
        np.fill_diagonal(d, 0.0)
        return FiniteMetric(d)

    def as_tree(self) -> MetricTree:
        m = len(self.legs)
        return MetricTree(tuple(range(m + 1)), tuple((0, i + 1, float(w)) for i, w in enumerate(self.legs)),
                          tuple(range(1, m + 1)))


def comb_tree(exponent: float, K: int) -> tuple[CombTree, FiniteMetric]:
    """Legs from the profile ``k -> k^((n-1)/n)``: each increment is split over two legs."""
    if not exponent >= 1 or K < 1:
        raise InvalidExponent(f"need exponent >= 1 and K >= 1, got {exponent}, {K}")
    s = (exponent - 1) / exponent
    legs = []
    prev = 0.0
    for k in range(1, K + 1):
        cur = float(k) ** s
        half = (cur - prev) / 2
        if half < MIN_LEG:
            raise InvalidExponent(f"profile increment at k={k} is {2 * half:.3e}; legs must be positive")
        legs += [half, half]
        prev = cur
    tree = CombTree(float(exponent), tuple(legs))
    return tree, tree.tips_metric()


# ---------------------------------------------------------------------------
# Cube experiments and the exponent fit


def grid_points(k: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """``k`` distinct centers of a uniform grid with ``ceil(k^(1/dim))`` cells per side."""
    side = math.ceil(k ** (1.0 / dim) - 1e-9)
    cells = rng.choice(side ** dim, size=k, replace=False)
    coords = np.array(np.unravel_index(cells, (side,) * dim)).T
    return (coords + 0.5) / side


def fps_points(k: int, dim: int, rng: np.random.Generator, pool: int | None = None) -> np.ndarray:
    """Farthest-point sample of ``k`` points from a dense uniform pool in ``[0,1]^dim``."""
    pool = pool or max(30 * k, 2000)
    P = rng.random((pool, dim))
    pick = [int(rng.integers(pool))]
    near = np.linalg.norm(P - P[pick[0]], axis=1)
    for _ in range(k - 1):
        j = int(np.argmax(near))
        pick.append(j)
        near = np.minimum(near, np.linalg.norm(P - P[j], axis=1))
    return P[pick]


def cube_experiment(dim: int, ks: Sequence[int], trials: int = 10, seed: int = 0,
                    norm="l2", methods: Sequence[str] = ("fps",)) -> ScalingSeries:
    """Matching numbers of well-spread ``k``-point sets in the unit cube.

    Every row's ``seed`` is the seed of the generator that produced it, so a
    single row can be regenerated on its own.
    """
    series = ScalingSeries()
    for k in ks:
        _check_k(k)
        for trial in range(trials):
            row_seed = int(np.random.SeedSequence([seed, dim, k, trial]).generate_state(1)[0])
            for method in methods:
                rng = np.random.default_rng(row_seed)
                if method == "fps":
                    pts = fps_points(k, dim, rng)
                elif method == "grid":
                    pts = grid_points(k, dim, rng)
                else:
                    raise ValueError(f"unknown placement {method!r}")
                value = min_matching(from_points(pts, norm)).value
                series.add(k, value, f"heuristic-{method}", trial, row_seed)
    return series


class DimensionFit(NamedTuple):
    slope: float
    intercept: float
    slope_ci: tuple[float, float]
    n_hat: float
    n_ci: tuple[float, float]
    monotone: bool
    r2: float


def _dim_from_slope(s: float) -> float:
    if s >= 1:
        return math.inf
    return max(1.0, 1.0 / (1.0 - s))


def fit_dimension(series: ScalingSeries | Sequence, strict: bool = False) -> DimensionFit:
    """Least-squares slope of ``log m_k`` against ``log k`` and ``n = 1/(1 - s)``.

    A slope ``>= 1`` maps to ``inf``; with ``strict=True`` it raises instead.
    """
    rows = series.rows if isinstance(series, ScalingSeries) else list(series)
    ks = np.array([r[0] for r in rows], dtype=float)
    vals = np.array([r[1] for r in rows], dtype=float)
    if len(set(ks.tolist())) < 3:
        raise InsufficientData("need at least three distinct k")
    if np.any(vals <= 0) or np.any(ks <= 0):
        raise InsufficientData("log-log fit needs positive k and values")
    x, y = np.log(ks), np.log(vals)
    if np.ptp(y) == 0:
        slope, intercept, stderr, r2 = 0.0, float(y[0]), 0.0, 1.0
    else:
        fit = stats.linregress(x, y)
        slope, intercept, stderr, r2 = float(fit.slope), float(fit.intercept), float(fit.stderr), float(fit.rvalue ** 2)
    if strict and slope >= 1:
        raise SlopeOutOfRange(f"slope {slope:.4f} >= 1: matching dimension is infinite")
    dof = len(x) - 2
    half = float(stats.t.ppf(0.975, dof)) * stderr if dof > 0 else math.inf
    lo, hi = slope - half, slope + half
    uk = np.unique(ks)
    means = np.array([vals[ks == k].mean() for k in uk])
    monotone = bool(np.all(np.diff(means) >= -1e-12))
    return DimensionFit(slope, intercept, (lo, hi), _dim_from_slope(slope),
                        (_dim_from_slope(lo), _dim_from_slope(hi)), monotone, r2)


def mk_series(metric: FiniteMetric, ks: Sequence[int], mode: str = "exhaustive",
              seed: int = 0) -> ScalingSeries:
    series = ScalingSeries()
    label = "exact" if mode == "exhaustive" else "heuristic"
    for k in ks:
        series.add(int(k), m_k(metric, k, mode, seed), label, 0, seed)
    return series


def meps_series(metric: FiniteMetric, epsilons: Sequence[float], mode: str = "exhaustive",
                seed: int = 0) -> ScalingSeries:
    series = ScalingSeries(param="eps")
    label = "exact" if mode == "exhaustive" else "heuristic"
    for e in epsilons:
        series.add(float(e), m_eps(metric, e, mode, seed), label, 0, seed)
    return series
