"""Minimum matchings on finite pseudometric spaces.

``min_matching`` runs a dense O(n^3) primal-dual blossom algorithm. Distances
are quantized to 40-bit integers before solving so that every tightness test
inside the algorithm is exact; the reported value is always recomputed from
the original floating-point distances. ``min_matching_oracle`` is an
independent subset dynamic program used as ground truth in tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import (InvalidMatching, InvalidPartition, OddCardinality,
                     SolverError, TooLarge)
from .metric import TOL_EXACT, FiniteMetric

_QUANT_BITS = 40


@dataclass(frozen=True)
class Matching:
    """A partition of ``0..n-1`` into pairs, stored as sorted ``(i, j)`` with ``i < j``."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = tuple(sorted((min(a, b), max(a, b)) for a, b in self.pairs))
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in norm))

    @property
    def n(self) -> int:
        return 2 * len(self.pairs)

    def value(self, metric: FiniteMetric) -> float:
        d = metric.dist
        return float(sum(d[i, j] for i, j in self.pairs))

    def check(self, n: int) -> None:
        seen = [i for p in self.pairs for i in p]
        if sorted(seen) != list(range(n)):
            raise InvalidMatching(f"pairs {list(self.pairs)} do not partition range({n})")

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]


@dataclass(frozen=True)
class MatchingResult:
    matching: Matching
    value: float

    @property
    def pairs(self):
        return self.matching.pairs

    def to_json(self) -> dict:
        return {"pairs": self.matching.to_json(), "value": float(self.value)}


@dataclass(frozen=True)
class Partition2:
    plus: tuple[int, ...]
    minus: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "plus", tuple(int(i) for i in self.plus))
        object.__setattr__(self, "minus", tuple(int(i) for i in self.minus))

    def check(self, n: int) -> None:
        if len(self.plus) != len(self.minus):
            raise InvalidPartition(f"|X+| = {len(self.plus)} but |X-| = {len(self.minus)}")
        both = list(self.plus) + list(self.minus)
        if sorted(both) != list(range(n)):
            raise InvalidPartition(f"X+ and X- must partition range({n})")

    def to_json(self) -> dict:
        return {"plus": list(self.plus), "minus": list(self.minus)}


def _require_even(metric: FiniteMetric) -> int:
    n = metric.n
    if n % 2:
        raise OddCardinality(f"matchings need an even number of points, got {n}")
    return n


# ---------------------------------------------------------------------------
# Blossom algorithm


class _DenseBlossom:
    """Maximum-weight matching on a complete graph with positive integer weights.

    Vertices are ``1..n``; ids ``n+1..2n`` are reserved for blossoms. For every
    pair of top-level (possibly blossom) vertices ``x, y`` the arrays
    ``gu, gv, gw`` hold the cheapest original edge between them: ``gu[x, y]``
    lies inside ``x`` and ``gv[x, y]`` inside ``y``. Vertex duals are stored
    doubled so that slacks stay integral.
    """

    def __init__(self, weights: np.ndarray):
        n = weights.shape[0] - 1
        size = 2 * n + 1
        self.n = n
        self.n_x = n
        self.w = weights
        self.gu = np.zeros((size, size), dtype=np.int64)
        self.gv = np.zeros((size, size), dtype=np.int64)
        self.gw = np.zeros((size, size), dtype=np.int64)
        idx = np.arange(n + 1)
        self.gu[: n + 1, : n + 1] = idx[:, None]
        self.gv[: n + 1, : n + 1] = idx[None, :]
        self.gw[: n + 1, : n + 1] = weights
        self.lab = np.zeros(size, dtype=np.int64)
        self.lab[1: n + 1] = int(weights.max())
        self.match = np.zeros(size, dtype=np.int64)
        self.slack = np.zeros(size, dtype=np.int64)
        self.st = np.arange(size, dtype=np.int64)
        self.st[n + 1:] = 0
        self.pa = np.zeros(size, dtype=np.int64)
        self.S = np.full(size, -1, dtype=np.int64)
        self.vis = np.zeros(size, dtype=np.int64)
        self.stamp = 0
        self.flower_from = np.zeros((size, n + 1), dtype=np.int64)
        self.flower_from[idx, idx] = idx
        self.flower: list[list[int]] = [[] for _ in range(size)]
        self.queue: deque[int] = deque()
        self.verts = np.arange(1, n + 1)

    # slack of the representative edge g[x][y]
    def _delta(self, x, y):
        u = self.gu[x, y]
        v = self.gv[x, y]
        return self.lab[u] + self.lab[v] - 2 * self.w[u, v]

    def _update_slack(self, u, x):
        s = self.slack[x]
        if s == 0 or self._delta(u, x) < self._delta(s, x):
            self.slack[x] = u

    def _set_slack(self, x):
        self.slack[x] = 0
        us = self.verts
        stu = self.st[us]
        ok = (self.gw[us, x] > 0) & (stu != x) & (self.S[stu] == 0)
        cand = us[ok]
        if cand.size:
            deltas = self._delta(cand, x)
            self.slack[x] = cand[int(np.argmin(deltas))]

    def _q_push(self, x):
        if x <= self.n:
            self.queue.append(int(x))
        else:
            for y in self.flower[x]:
                self._q_push(y)

    def _set_st(self, x, b):
        self.st[x] = b
        if x > self.n:
            for y in self.flower[x]:
                self._set_st(y, b)

    def _get_pr(self, b, xr):
        fl = self.flower[b]
        pr = fl.index(xr)
        if pr % 2 == 1:
            fl[1:] = fl[1:][::-1]
            return len(fl) - pr
        return pr

    def _set_match(self, u, v):
        self.match[u] = self.gv[u, v]
        if u > self.n:
            xr = int(self.flower_from[u, self.gu[u, v]])
            pr = self._get_pr(u, xr)
            fl = self.flower[u]
            for i in range(pr):
                self._set_match(fl[i], fl[i ^ 1])
            self._set_match(xr, v)
            fl[:] = fl[pr:] + fl[:pr]

    def _augment(self, u, v):
        while True:
            xnv = int(self.st[self.match[u]])
            self._set_match(u, v)
            if not xnv:
                return
            self._set_match(xnv, int(self.st[self.pa[xnv]]))
            u, v = int(self.st[self.pa[xnv]]), xnv

    def _get_lca(self, u, v):
        self.stamp += 1
        t = self.stamp
        while u or v:
            if u:
                if self.vis[u] == t:
                    return u
                self.vis[u] = t
                u = int(self.st[self.match[u]])
                if u:
                    u = int(self.st[self.pa[u]])
            u, v = v, u
        return 0

    def _add_blossom(self, u, lca, v):
        n = self.n
        b = n + 1
        while b <= self.n_x and self.st[b]:
            b += 1
        if b > self.n_x:
            self.n_x += 1
        self.lab[b] = 0
        self.S[b] = 0
        self.match[b] = self.match[lca]
        fl = [lca]
        x = u
        while x != lca:
            y = int(self.st[self.match[x]])
            fl += [x, y]
            self._q_push(y)
            x = int(self.st[self.pa[y]])
        fl[1:] = fl[1:][::-1]
        x = v
        while x != lca:
            y = int(self.st[self.match[x]])
            fl += [x, y]
            self._q_push(y)
            x = int(self.st[self.pa[y]])
        self.flower[b] = fl
        self._set_st(b, b)
        xr = np.arange(1, self.n_x + 1)
        self.gw[b, xr] = 0
        self.gw[xr, b] = 0
        self.flower_from[b, :] = 0
        for xs in fl:
            better = (self.gw[b, xr] == 0) | (self._delta(xs, xr) < self._delta(b, xr))
            sel = xr[better]
            self.gu[b, sel] = self.gu[xs, sel]
            self.gv[b, sel] = self.gv[xs, sel]
            self.gw[b, sel] = self.gw[xs, sel]
            self.gu[sel, b] = self.gu[sel, xs]
            self.gv[sel, b] = self.gv[sel, xs]
            self.gw[sel, b] = self.gw[sel, xs]
            self.flower_from[b, self.flower_from[xs] != 0] = xs
        self._set_slack(b)

    def _expand_blossom(self, b):
        for x in self.flower[b]:
            self._set_st(x, x)
        xr = int(self.flower_from[b, self.gu[b, self.pa[b]]])
        pr = self._get_pr(b, xr)
        fl = self.flower[b]
        for i in range(0, pr, 2):
            xs, xns = fl[i], fl[i + 1]
            self.pa[xs] = self.gu[xns, xs]
            self.S[xs] = 1
            self.S[xns] = 0
            self.slack[xs] = 0
            self._set_slack(xns)
            self._q_push(xns)
        self.S[xr] = 1
        self.pa[xr] = self.pa[b]
        for xs in fl[pr + 1:]:
            self.S[xs] = -1
            self._set_slack(xs)
        self.st[b] = 0

    def _on_found_edge(self, eu, ev):
        u = int(self.st[eu])
        v = int(self.st[ev])
        if self.S[v] == -1:
            self.pa[v] = eu
            self.S[v] = 1
            nu = int(self.st[self.match[v]])
            self.slack[v] = 0
            self.slack[nu] = 0
            self.S[nu] = 0
            self._q_push(nu)
        elif self.S[v] == 0:
            lca = self._get_lca(u, v)
            if not lca:
                self._augment(u, v)
                self._augment(v, u)
                return True
            self._add_blossom(u, lca, v)
        return False

    def _scan(self, u):
        st = self.st
        verts = self.verts
        delta = self.lab[u] + self.lab[verts] - 2 * self.w[u, verts]
        valid = (self.w[u, verts] > 0) & (st[verts] != st[u])
        for v in verts[valid & (delta == 0)]:
            if st[u] != st[v] and self._on_found_edge(u, int(v)):
                return True
        rest = verts[valid & (delta != 0)]
        xs = st[rest]
        xs = np.unique(xs[xs != st[u]])
        if xs.size:
            cur = self.slack[xs]
            better = (cur == 0) | (self._delta(u, xs) < self._delta(cur, xs))
            self.slack[xs[better]] = u
        return False

    def _stage(self):
        n = self.n
        top = np.arange(1, self.n_x + 1)
        self.S[top] = -1
        self.slack[top] = 0
        self.queue.clear()
        for x in top:
            if self.st[x] == x and not self.match[x]:
                self.pa[x] = 0
                self.S[x] = 0
                self._q_push(x)
        if not self.queue:
            return False
        guard = 0
        while True:
            while self.queue:
                u = self.queue.popleft()
                if self.S[self.st[u]] == 1:
                    continue
                if self._scan(u):
                    return True
            guard += 1
            if guard > 8 * (self.n_x + 2) ** 2:
                raise SolverError("blossom dual updates did not converge")

            d = None
            xs = np.arange(1, self.n_x + 1)
            is_top = self.st[xs] == xs
            blos = xs[(xs > n) & is_top & (self.S[xs] == 1)]
            if blos.size:
                d = int(np.min(self.lab[blos] // 2))
            sl = xs[is_top & (self.slack[xs] != 0)]
            if sl.size:
                dl = self._delta(self.slack[sl], sl)
                s_sl = self.S[sl]
                free = dl[s_sl == -1]
                outer = dl[s_sl == 0]
                if free.size:
                    m = int(free.min())
                    d = m if d is None else min(d, m)
                if outer.size:
                    m = int(outer.min()) // 2
                    d = m if d is None else min(d, m)
            if d is None:
                return False
            verts = self.verts
            s_v = self.S[self.st[verts]]
            outer_v = verts[s_v == 0]
            if outer_v.size and np.any(self.lab[outer_v] <= d):
                return False
            self.lab[outer_v] -= d
            self.lab[verts[s_v == 1]] += d
            bs = np.arange(n + 1, self.n_x + 1)
            bs = bs[self.st[bs] == bs]
            s_b = self.S[bs]
            self.lab[bs[s_b == 0]] += 2 * d
            self.lab[bs[s_b == 1]] -= 2 * d

            self.queue.clear()
            xs = np.arange(1, self.n_x + 1)
            sx = self.slack[xs]
            cand = xs[(self.st[xs] == xs) & (sx != 0)]
            if cand.size:
                sx = self.slack[cand]
                cand = cand[(self.st[sx] != cand) & (self._delta(sx, cand) == 0)]
            for x in cand:
                s = self.slack[x]
                if self.st[x] == x and s and self.st[s] != x and self._delta(s, x) == 0:
                    if self._on_found_edge(int(self.gu[s, x]), int(self.gv[s, x])):
                        return True
            bs = np.arange(n + 1, self.n_x + 1)
            bs = bs[(self.st[bs] == bs) & (self.S[bs] == 1) & (self.lab[bs] == 0)]
            for b in bs:
                if self.st[b] == b and self.S[b] == 1 and self.lab[b] == 0:
                    self._expand_blossom(int(b))

    def solve(self) -> list[tuple[int, int]]:
        while self._stage():
            pass
        pairs = []
        for u in range(1, self.n + 1):
            v = int(self.match[u])
            if v and u < v:
                pairs.append((u - 1, v - 1))
        return pairs


def _quantized_weights(d: np.ndarray) -> np.ndarray:
    n = d.shape[0]
    scale = float(d.max())
    top = 1 << _QUANT_BITS
    q = np.rint(d / scale * top).astype(np.int64) if scale > 0 else np.zeros_like(d, dtype=np.int64)
    w = np.zeros((n + 1, n + 1), dtype=np.int64)
    w[1:, 1:] = top + 1 - q
    np.fill_diagonal(w, 0)
    return w


def min_matching(metric: FiniteMetric) -> MatchingResult:
    """Minimum-weight perfect matching of the complete graph on the points.

    On a complete graph with strictly positive weights every maximum-weight
    matching is perfect, so minimizing ``sum d`` is the same as maximizing
    ``sum (C - d)`` for any ``C > max d``.
    """
    n = _require_even(metric)
    if n == 0:
        return MatchingResult(Matching(()), 0.0)
    d = np.asarray(metric.dist, dtype=float)
    if n == 2:
        pairs = [(0, 1)]
    else:
        pairs = _DenseBlossom(_quantized_weights(d)).solve()
    matching = Matching(tuple(pairs))
    if matching.n != n:
        raise SolverError(f"blossom returned {len(pairs)} pairs for {n} points")
    return MatchingResult(matching, matching.value(metric))


# ---------------------------------------------------------------------------
# Exhaustive oracle and enumeration


def _subset_dp(d: list[list[float]], n: int):
    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[float, int]:
        if mask == 0:
            return 0.0, -1
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        best_val, best_j = float("inf"), -1
        m = rest
        while m:
            bit = m & -m
            j = bit.bit_length() - 1
            val = d[i][j] + best(rest ^ bit)[0]
            if val < best_val:
                best_val, best_j = val, j
            m ^= bit
        return best_val, best_j

    return best


def min_matching_oracle(metric: FiniteMetric) -> MatchingResult:
    """Exact optimum by dynamic programming over subsets (n <= 22)."""
    n = _require_even(metric)
    if n > 22:
        raise TooLarge(f"subset DP is limited to 22 points, got {n}")
    d = np.asarray(metric.dist, dtype=float).tolist()
    best = _subset_dp(d, n)
    mask = (1 << n) - 1
    pairs = []
    while mask:
        i = (mask & -mask).bit_length() - 1
        j = best(mask)[1]
        pairs.append((i, j))
        mask &= ~((1 << i) | (1 << j))
    matching = Matching(tuple(pairs))
    return MatchingResult(matching, matching.value(metric))


def enumerate_min_matchings(metric: FiniteMetric, tol: float = TOL_EXACT) -> list[Matching]:
    """All matchings within ``tol`` of the optimum, in lexicographic order.

    Branch and bound on the smallest unmatched index; the bound for the
    remaining points is their exact subset-DP optimum, so no branch is
    explored that cannot finish below ``m(X,d) + tol``.
    """
    n = _require_even(metric)
    if n > 12:
        raise TooLarge(f"enumeration is limited to 12 points, got {n}")
    d = np.asarray(metric.dist, dtype=float).tolist()
    best = _subset_dp(d, n)
    full = (1 << n) - 1
    limit = best(full)[0] + tol
    out: list[Matching] = []
    stack: list[tuple[int, int]] = []

    def rec(mask: int, cost: float):
        if mask == 0:
            out.append(Matching(tuple(stack)))
            return
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        m = rest
        while m:
            bit = m & -m
            j = bit.bit_length() - 1
            c = cost + d[i][j]
            if c + best(rest ^ bit)[0] <= limit:
                stack.append((i, j))
                rec(rest ^ bit, c)
                stack.pop()
            m ^= bit

    rec(full, 0.0)
    return out


def minimal_pairs(metric: FiniteMetric, tol: float = TOL_EXACT) -> set[tuple[int, int]]:
    """Pairs ``{i, j}`` (as ``i < j``) occurring in some minimal matching."""
    return {p for m in enumerate_min_matchings(metric, tol) for p in m.pairs}


# ---------------------------------------------------------------------------
# Oriented problem


class OrientedResult(NamedTuple):
    sigma: tuple[int, ...]          # plus[i] is connected to minus[sigma[i]]
    pairs: tuple[tuple[int, int], ...]
    value: float


def _cost_matrix(metric: FiniteMetric, partition: Partition2) -> np.ndarray:
    partition.check(metric.n)
    d = np.asarray(metric.dist, dtype=float)
    return d[np.ix_(partition.plus, partition.minus)]


def min_cost_assignment(cost) -> tuple[np.ndarray, float]:
    cost = np.asarray(cost, dtype=float)
    rows, cols = linear_sum_assignment(cost)
    sigma = np.empty(cost.shape[0], dtype=int)
    sigma[rows] = cols
    return sigma, float(cost[rows, cols].sum())


def oriented_min_connection(metric: FiniteMetric, partition: Partition2) -> OrientedResult:
    """Minimal connection ``M(Π, d)`` between ``X+`` and ``X-``."""
    cost = _cost_matrix(metric, partition)
    sigma, value = min_cost_assignment(cost)
    pairs = tuple((partition.plus[i], partition.minus[j]) for i, j in enumerate(sigma))
    return OrientedResult(tuple(int(s) for s in sigma), pairs, value)


def assignment_duals(cost: np.ndarray, sigma: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Dual variables ``u, v`` with ``u_i + v_j <= c_ij``, tight on ``sigma``.

    Bellman-Ford from a virtual source on the residual graph of the optimal
    assignment: forward arcs ``+i -> -j`` for unassigned pairs with cost
    ``c_ij``, backward arcs ``-sigma(i) -> +i`` with cost ``-c_i,sigma(i)``.
    """
    k = cost.shape[0]
    forward = cost.copy()
    forward[np.arange(k), sigma] = np.inf
    back = cost[np.arange(k), sigma]
    # zero-cost cycles are common (additive distances); rounding must not
    # make them look negative, so only relax on a real improvement
    eps = 1e-13 * max(1.0, float(np.max(np.abs(cost)))) if k else 0.0
    p_plus = np.zeros(k)
    p_minus = np.zeros(k)
    for _ in range(2 * k + 2):
        cand = (p_plus[:, None] + forward).min(axis=0)
        new_minus = np.where(cand < p_minus - eps, cand, p_minus)
        cand = new_minus[sigma] - back
        new_plus = np.where(cand < p_plus - eps, cand, p_plus)
        if np.array_equal(new_minus, p_minus) and np.array_equal(new_plus, p_plus):
            break
        p_plus, p_minus = new_plus, new_minus
    else:
        raise SolverError("residual graph has a negative cycle; assignment is not optimal")
    return -p_plus, p_minus


def kantorovich_potential(metric: FiniteMetric, partition: Partition2) -> np.ndarray:
    """A 1-Lipschitz ``f`` on all points with ``sum f(X+) - sum f(X-) = M(Π, d)``.

    The assignment duals only certify ``f(x+) - f(x-) <= d`` across the
    partition; the c-transform ``f(z) = min_j d(z, x_j-) - v_j`` turns them
    into a function that is 1-Lipschitz on every pair of points without
    lowering the gap. Normalized so that ``f`` vanishes at ``min(X+)``.
    """
    cost = _cost_matrix(metric, partition)
    sigma, _ = min_cost_assignment(cost)
    _, v = assignment_duals(cost, sigma)
    d = np.asarray(metric.dist, dtype=float)
    minus = np.asarray(partition.minus)
    f = (d[:, minus] - v[None, :]).min(axis=1)
    return f - f[min(partition.plus)]


def potential_gap(f, partition: Partition2) -> float:
    f = np.asarray(f, dtype=float)
    return float(f[list(partition.plus)].sum() - f[list(partition.minus)].sum())


def lipschitz_defect(metric: FiniteMetric, f) -> float:
    """``max (|f(i) - f(j)| - d(i, j))``; nonpositive iff ``f`` is 1-Lipschitz."""
    f = np.asarray(f, dtype=float)
    return float(np.max(np.abs(f[:, None] - f[None, :]) - np.asarray(metric.dist, dtype=float)))


# ---------------------------------------------------------------------------
# Local minimality


class SwapCheck(NamedTuple):
    locally_minimal: bool
    swap: tuple | None   # ((old pair, old pair), (new pair, new pair), gain)


def is_locally_minimal_2swap(metric: FiniteMetric, matching: Matching,
                             tol: float = TOL_EXACT) -> SwapCheck:
    """No exchange of two pairs for the other two pairings lowers the weight by more than ``tol``.

    This is only the local property; on finite spaces it does not certify
    global minimality.
    """
    matching.check(metric.n)
    d = np.asarray(metric.dist, dtype=float)
    P = np.array(matching.pairs, dtype=int).reshape(-1, 2)
    if len(P) < 2:
        return SwapCheck(True, None)
    a, b = P[:, 0], P[:, 1]
    cur = d[a, b][:, None] + d[a, b][None, :]
    alt1 = d[a[:, None], a[None, :]] + d[b[:, None], b[None, :]]    # {a,c},{b,d}
    alt2 = d[a[:, None], b[None, :]] + d[b[:, None], a[None, :]]    # {a,d},{b,c}
    gain1 = cur - alt1
    gain2 = cur - alt2
    iu = np.triu_indices(len(P), 1)
    g1, g2 = gain1[iu], gain2[iu]
    k1, k2 = int(np.argmax(g1)), int(np.argmax(g2))
    if max(g1[k1], g2[k2]) <= tol:
        return SwapCheck(True, None)
    if g1[k1] >= g2[k2]:
        p, q = iu[0][k1], iu[1][k1]
        new = ((a[p], a[q]), (b[p], b[q]))
        gain = g1[k1]
    else:
        p, q = iu[0][k2], iu[1][k2]
        new = ((a[p], b[q]), (b[p], a[q]))
        gain = g2[k2]
    old = (tuple(int(x) for x in P[p]), tuple(int(x) for x in P[q]))
    new = tuple(tuple(sorted(int(x) for x in pair)) for pair in new)
    return SwapCheck(False, (old, new, float(gain)))


def apply_swap(matching: Matching, swap) -> Matching:
    old, new, _ = swap
    pairs = [p for p in matching.pairs if p not in old] + list(new)
    return Matching(tuple(pairs))


def all_matchings(n: int):
    """Every perfect matching of ``range(n)`` (generator; (n-1)!! items)."""
    def rec(rest):
        if not rest:
            yield ()
            return
        i = rest[0]
        for k in range(1, len(rest)):
            j = rest[k]
            for tail in rec(rest[1:k] + rest[k + 1:]):
                yield ((i, j),) + tail
    yield from rec(tuple(range(n)))


def matching_incidence(n: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """0/1 matrix (matchings x pairs) for all matchings of ``range(n)``."""
    pair_list = list(combinations(range(n), 2))
    index = {p: k for k, p in enumerate(pair_list)}
    rows = [[index[p] for p in m] for m in all_matchings(n)]
    A = np.zeros((len(rows), len(pair_list)))
    for r, cols in enumerate(rows):
        A[r, cols] = 1.0
    return A, pair_list


def matching_from_pairs(pairs: Sequence[Sequence[int]]) -> Matching:
    return Matching(tuple((int(a), int(b)) for a, b in pairs))
