"""Mod-2 calibrations on metric graphs.

A metric graph stands in for a geodesic ambient space; its terminals are the
even point set. Functions are piecewise linear (affine on every edge), chains
are edge sets with Z/2 coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, NamedTuple, Sequence

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import (Disconnected, InfeasibleExtension, InvalidGraph,
                     InvalidPartition, NonGenericLevel, OddTerminals,
                     RootNotInTree)
from .matching import (Matching, Partition2, min_matching,
                       oriented_min_connection)
from .metric import TOL_EXACT, TOL_GEOM, FiniteMetric
from .tree import MetricTree


@dataclass(frozen=True, eq=False)
class MetricGraph:
    """Simple undirected graph with positive edge lengths and marked terminals."""

    vertices: tuple[Hashable, ...]
    edges: tuple[tuple[Hashable, Hashable, float], ...]
    terminals: tuple[Hashable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple((u, v, float(w)) for u, v, w in self.edges))
        object.__setattr__(self, "terminals", tuple(self.terminals))
        index = {v: k for k, v in enumerate(self.vertices)}
        if len(index) != len(self.vertices):
            raise InvalidGraph("duplicate vertex ids")
        seen = set()
        for u, v, w in self.edges:
            if u not in index or v not in index:
                raise InvalidGraph(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            if u == v:
                raise InvalidGraph(f"self-loop at {u!r}")
            if not (np.isfinite(w) and w > 0):
                raise InvalidGraph(f"edge ({u!r}, {v!r}) has non-positive length {w!r}")
            key = frozenset((u, v))
            if key in seen:
                raise InvalidGraph(f"parallel edge between {u!r} and {v!r}")
            seen.add(key)
        if len(set(self.terminals)) != len(self.terminals):
            raise InvalidGraph("terminals must be distinct")
        for t in self.terminals:
            if t not in index:
                raise InvalidGraph(f"terminal {t!r} is not a vertex")

    @cached_property
    def index(self) -> dict:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict:
        return {frozenset((u, v)): k for k, (u, v, _) in enumerate(self.edges)}

    @cached_property
    def endpoints(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Vertex positions ``(u, v)`` and lengths of every edge, as arrays."""
        if not self.edges:
            return np.zeros(0, int), np.zeros(0, int), np.zeros(0)
        u = np.array([self.index[a] for a, _, _ in self.edges])
        v = np.array([self.index[b] for _, b, _ in self.edges])
        w = np.array([e[2] for e in self.edges])
        return u, v, w

    @cached_property
    def matrix(self) -> csr_matrix:
        u, v, w = self.endpoints
        n = len(self.vertices)
        return csr_matrix((np.concatenate([w, w]), (np.concatenate([u, v]), np.concatenate([v, u]))),
                          shape=(n, n))

    @cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        u, v, w = self.endpoints
        for k in range(len(w)):
            g.add_edge(int(u[k]), int(v[k]), weight=float(w[k]), key=k)
        return g

    @cached_property
    def terminal_pos(self) -> np.ndarray:
        return np.array([self.index[t] for t in self.terminals], dtype=int)

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and nx.is_connected(self.nx_graph)

    def require_connected(self) -> None:
        if not self.is_connected():
            raise Disconnected("graph is not connected")

    def distances(self, sources=None, predecessors: bool = False):
        """Dijkstra distances from the given vertex positions (all if None)."""
        return dijkstra(self.matrix, directed=False, indices=sources,
                        return_predecessors=predecessors)

    def is_tree(self) -> bool:
        return nx.is_tree(self.nx_graph) if self.vertices else False

    def with_terminals(self, terminals) -> MetricGraph:
        return MetricGraph(self.vertices, self.edges, tuple(terminals))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [[u, v, float(w)] for u, v, w in self.edges],
                "terminals": list(self.terminals)}


def shortest_path_metric(G: MetricGraph) -> FiniteMetric:
    """Path distances between terminals, in the order of ``G.terminals``."""
    if not G.terminals:
        raise InvalidGraph("graph has no terminals")
    dist = G.distances(G.terminal_pos)[:, G.terminal_pos]
    if not np.all(np.isfinite(dist)):
        raise Disconnected("some terminals lie in different components")
    dist = (dist + dist.T) / 2
    np.fill_diagonal(dist, 0.0)
    return FiniteMetric(dist)


@dataclass(frozen=True)
class Chain2:
    """Edge set with Z/2 coefficients; edges are indices into ``graph.edges``."""

    graph: MetricGraph = field(repr=False, compare=False)
    edges: frozenset[int]

    @property
    def mass(self) -> float:
        return float(sum(self.graph.edges[e][2] for e in self.edges))

    def boundary(self) -> set:
        deg: dict = {}
        for e in self.edges:
            u, v, _ = self.graph.edges[e]
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return {x for x, k in deg.items() if k % 2}

    def __add__(self, other: Chain2) -> Chain2:
        return Chain2(self.graph, self.edges ^ other.edges)

    def to_json(self) -> dict:
        return {"edges": [list(self.graph.edges[e][:2]) for e in sorted(self.edges)],
                "mass": self.mass}


class FillResult(NamedTuple):
    chain: Chain2
    mass: float
    matching_value: float
    matching: Matching


def fill_z2(G: MetricGraph) -> FillResult:
    """Minimum T-join: match terminals in the path metric, then XOR the shortest paths.

    The mass is recomputed from the final edge set. It can only fall below
    the matching value if two shortest paths share edges; with a minimal
    matching that does not happen, but the recomputed number is what is
    reported.
    """
    if len(G.terminals) % 2:
        raise OddTerminals(f"{len(G.terminals)} terminals")
    if not G.terminals:
        return FillResult(Chain2(G, frozenset()), 0.0, 0.0, Matching(()))
    dist, pred = G.distances(G.terminal_pos, predecessors=True)
    D = dist[:, G.terminal_pos]
    if not np.all(np.isfinite(D)):
        raise Disconnected("some terminals lie in different components")
    D = (D + D.T) / 2
    np.fill_diagonal(D, 0.0)
    res = min_matching(FiniteMetric(D))
    chosen: set[int] = set()
    for a, b in res.matching.pairs:
        x = int(G.terminal_pos[b])
        target = int(G.terminal_pos[a])
        while x != target:
            p = int(pred[a, x])
            chosen ^= {G.edge_index[frozenset((G.vertices[p], G.vertices[x]))]}
            x = p
    chain = Chain2(G, frozenset(chosen))
    return FillResult(chain, chain.mass, res.value, res.matching)


@dataclass(frozen=True)
class PLFunction:
    """Vertex values of a function that is affine on every edge."""

    values: dict

    def array(self, G: MetricGraph) -> np.ndarray:
        return np.array([float(self.values[v]) for v in G.vertices])

    def __add__(self, other: PLFunction) -> PLFunction:
        return PLFunction({k: self.values[k] + other.values[k] for k in self.values})

    def scale(self, c: float) -> PLFunction:
        return PLFunction({k: c * x for k, x in self.values.items()})

    def to_json(self) -> dict:
        return {"values": {str(k): float(x) for k, x in self.values.items()}}


def lipschitz_defect(G: MetricGraph, phi: PLFunction) -> float:
    """``max_e (|Δφ| - length)``; at most 0 iff ``φ`` is 1-Lipschitz on ``G``."""
    u, v, w = G.endpoints
    if len(w) == 0:
        return 0.0
    f = phi.array(G)
    return float(np.max(np.abs(f[u] - f[v]) - w))


def lipschitz_envelope(G: MetricGraph, values: dict) -> PLFunction:
    """McShane extension ``min_x (values[x] + d_G(x, ·))`` of values given on some vertices."""
    keys = list(values)
    pos = [G.index[k] for k in keys]
    dist = G.distances(pos)
    vals = np.array([float(values[k]) for k in keys])
    f = (vals[:, None] + dist).min(axis=0)
    return PLFunction({v: float(f[i]) for i, v in enumerate(G.vertices)})


def random_lipschitz(G: MetricGraph, rng: np.random.Generator, anchors: int | None = None) -> PLFunction:
    """A random 1-Lipschitz PL function: envelope of random values, randomly rescaled."""
    n = len(G.vertices)
    k = anchors if anchors is not None else int(rng.integers(1, n + 1))
    pick = rng.choice(n, size=min(k, n), replace=False)
    diam = float(np.max(G.distances(pick)[np.isfinite(G.distances(pick))])) if n > 1 else 1.0
    vals = {G.vertices[i]: float(rng.uniform(-diam, diam)) for i in pick}
    env = lipschitz_envelope(G, vals)
    sign = -1.0 if rng.random() < 0.5 else 1.0
    return env.scale(sign * float(rng.uniform(0.2, 1.0)))


# ---------------------------------------------------------------------------
# Trees as targets


class TreePoint(NamedTuple):
    """Point on edge ``(u, v)`` at distance ``s`` from ``u``; a vertex is ``(x, x, 0)``."""

    u: int
    v: int
    s: float


def vertex_point(x: int) -> TreePoint:
    return TreePoint(x, x, 0.0)


class _TreeGeometry:
    """All-pairs vertex distances of a small tree plus point-to-point distance."""

    def __init__(self, T: MetricTree):
        self.T = T
        self.pos = {v: k for k, v in enumerate(T.vertices)}
        k = len(T.vertices)
        self.dv = np.zeros((k, k))
        for v in T.vertices:
            dist = T.distances_from(v)
            for x, d in dist.items():
                self.dv[self.pos[v], self.pos[x]] = d
        self.eu = np.array([self.pos[u] for u, _, _ in T.edges], dtype=int)
        self.ev = np.array([self.pos[v] for _, v, _ in T.edges], dtype=int)
        self.el = np.array([w for _, _, w in T.edges], dtype=float)
        self.edge_of = {frozenset((u, v)): e for e, (u, v, _) in enumerate(T.edges)}

    def canon(self, p: TreePoint) -> TreePoint:
        """Orient ``p`` along the stored edge and snap endpoints to vertices."""
        if p.u == p.v:
            return p
        e = self.edge_of.get(frozenset((p.u, p.v)))
        if e is None:
            raise InvalidGraph(f"({p.u}, {p.v}) is not a tree edge")
        a, b, L = self.T.edges[e]
        s = p.s if p.u == a else L - p.s
        if s <= 0:
            return vertex_point(a)
        if s >= L:
            return vertex_point(b)
        return TreePoint(a, b, float(s))

    def ends(self, p: TreePoint):
        """``[(vertex position, offset)]`` for the endpoints of ``p``'s edge."""
        if p.u == p.v:
            return [(self.pos[p.u], 0.0)]
        L = self.el[self.edge_of[frozenset((p.u, p.v))]]
        return [(self.pos[p.u], p.s), (self.pos[p.v], L - p.s)]

    def dist(self, p: TreePoint, q: TreePoint) -> float:
        p, q = self.canon(p), self.canon(q)
        if p.u != p.v and (p.u, p.v) == (q.u, q.v):
            return abs(p.s - q.s)
        return min(a_off + self.dv[a, b] + b_off for a, a_off in self.ends(p) for b, b_off in self.ends(q))

    def to_vertices(self, p: TreePoint) -> np.ndarray:
        """Distances from ``p`` to every tree vertex."""
        return np.min([off + self.dv[a] for a, off in self.ends(self.canon(p))], axis=0)

    def edge_profile(self, c: TreePoint):
        """For every edge ``(a, b, L)``: distance to ``c`` at parameter ``s`` is
        ``|s - s0|`` if ``c`` is interior to that edge, otherwise ``base + slope * s``
        with ``slope = ±1``. Returns ``(interior, s0, base, slope)`` arrays."""
        c = self.canon(c)
        dva = self.to_vertices(c)
        da, db = dva[self.eu], dva[self.ev]
        # c is on a's side iff d(c, b) = d(c, a) + L
        a_side = da <= db
        base = np.where(a_side, da, db + self.el)
        slope = np.where(a_side, 1.0, -1.0)
        interior = np.zeros(len(self.el), dtype=bool)
        s0 = np.zeros(len(self.el))
        if c.u != c.v:
            e = self.edge_of[frozenset((c.u, c.v))]
            interior[e] = True
            s0[e] = c.s
        return interior, s0, base, slope

    def _ball_bounds(self, profiles, radii, slack):
        lo = np.zeros(len(self.el))
        hi = self.el.copy()
        for (interior, s0, base, slope), r in zip(profiles, radii):
            r = r + slack
            # base + slope*s <= r
            lim = r - base
            up = np.where(interior, s0 + r, np.where(slope > 0, lim, np.inf))
            dn = np.where(interior, s0 - r, np.where(slope < 0, -lim, -np.inf))
            hi = np.minimum(hi, up)
            lo = np.maximum(lo, dn)
        return lo, hi

    def closest_in_balls(self, centers: Sequence[TreePoint], radii: Sequence[float],
                         anchor: TreePoint, tol: float) -> TreePoint | None:
        """Point of ``∩ B(c_i, r_i)`` closest to ``anchor`` (None if empty).

        The exact intersection is tried first. Only if it is empty are the
        radii widened by ``tol``, and then the midpoint of the widened interval
        is used so that the slack is not spent pulling towards ``anchor``.
        """
        if len(self.el) == 0:
            return vertex_point(self.T.vertices[0])
        profiles = [self.edge_profile(c) for c in centers]
        lo, hi = self._ball_bounds(profiles, radii, 0.0)
        ok = lo <= hi
        tight = not np.any(ok)
        if tight:
            lo, hi = self._ball_bounds(profiles, radii, tol)
            ok = lo <= hi
            if not np.any(ok):
                return None
        interior, s0, base, slope = self.edge_profile(anchor)
        if tight:
            best_s = (lo + hi) / 2
        else:
            best_s = np.where(interior, np.clip(s0, lo, hi), np.where(slope > 0, lo, hi))
        val = np.where(interior, np.abs(best_s - s0), base + slope * best_s)
        val = np.where(ok, val, np.inf)
        e = int(np.argmin(val))
        a, b, _ = self.T.edges[e]
        return self.canon(TreePoint(a, b, float(np.clip(best_s[e], 0.0, self.el[e]))))


def orientation_rho(T: MetricTree, root: int) -> PLFunction:
    """Distance from ``root``: slope ±1 on every edge."""
    if root not in T.adjacency:
        raise RootNotInTree(f"vertex {root!r} is not in the tree")
    return PLFunction(T.distances_from(root))


def _as_point(x) -> TreePoint:
    if isinstance(x, TreePoint):
        return x
    if isinstance(x, (tuple, list)) and len(x) == 3:
        return TreePoint(int(x[0]), int(x[1]), float(x[2]))
    return vertex_point(int(x))


def extend_to_tree(G: MetricGraph, T: MetricTree, f0: dict, tol: float = TOL_GEOM) -> dict:
    """1-Lipschitz extension of ``f0`` (terminal -> tree point) to all vertices of ``G``.

    Vertices are processed by distance from the terminal set. Each one is
    placed in the intersection of the balls ``B(f(t), d_G(v, t))`` over
    terminals and ``B(f(u), |uv|)`` over placed neighbours, at the point
    closest to the image of the neighbour it was reached from. The choice is
    audited against every placed vertex; on failure the intersection over all
    placed vertices is used instead, which is nonempty in a tree whenever the
    placed map is 1-Lipschitz.
    """
    G.require_connected()
    geo = _TreeGeometry(T)
    V = len(G.vertices)
    dG = G.distances()
    term = [G.index[t] for t in f0]
    img: dict[int, TreePoint] = {}
    for t, p in f0.items():
        img[G.index[t]] = geo.canon(_as_point(p))
    for a in range(len(term)):
        for b in range(a + 1, len(term)):
            i, j = term[a], term[b]
            gap = geo.dist(img[i], img[j]) - dG[i, j]
            if gap > tol:
                raise InfeasibleExtension(
                    f"terminals {G.vertices[i]!r}, {G.vertices[j]!r} are stretched by {gap:.3e}",
                    balls=((G.vertices[i], G.vertices[j]), float(gap)))

    dist, pred, _ = dijkstra(G.matrix, directed=False, indices=term, min_only=True,
                             return_predecessors=True)
    order = sorted((v for v in range(V) if v not in img), key=lambda v: (dist[v], v))
    nbrs = [[] for _ in range(V)]
    u_arr, v_arr, w_arr = G.endpoints
    for a, b, w in zip(u_arr, v_arr, w_arr):
        nbrs[a].append((b, w))
        nbrs[b].append((a, w))
    placed = list(img)
    for v in order:
        anchor = img[int(pred[v])]
        centers = [img[t] for t in term]
        radii = [dG[v, t] for t in term]
        for u, w in nbrs[v]:
            if u in img:
                centers.append(img[u])
                radii.append(w)
        p = geo.closest_in_balls(centers, radii, anchor, tol * 1e-3)
        if p is None or any(geo.dist(p, img[x]) > dG[v, x] + tol for x in placed):
            centers = [img[x] for x in placed]
            radii = [dG[v, x] for x in placed]
            p = geo.closest_in_balls(centers, radii, anchor, tol * 1e-3)
            if p is None:
                i, j = _worst_ball_pair(geo, centers, radii)
                raise InfeasibleExtension(
                    f"no tree point for vertex {G.vertices[v]!r}",
                    balls=((G.vertices[placed[i]], radii[i]), (G.vertices[placed[j]], radii[j])))
        img[v] = p
        placed.append(v)
    return {G.vertices[k]: img[k] for k in range(V)}


def _worst_ball_pair(geo: _TreeGeometry, centers, radii):
    best, pair = -np.inf, (0, 0)
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            gap = geo.dist(centers[i], centers[j]) - radii[i] - radii[j]
            if gap > best:
                best, pair = gap, (i, j)
    return pair


def extension_defect(G: MetricGraph, T: MetricTree, f: dict) -> float:
    """``max_e (d_T(f(u), f(v)) - length)`` over edges of ``G``."""
    geo = _TreeGeometry(T)
    worst = -np.inf
    for u, v, w in G.edges:
        worst = max(worst, geo.dist(_as_point(f[u]), _as_point(f[v])) - w)
    return float(worst) if G.edges else 0.0


def pullback_orientation(G: MetricGraph, T: MetricTree, f: dict, root: int,
                         tol: float = 1e-12) -> tuple[MetricGraph, PLFunction]:
    """``ρ∘f`` for ``ρ = d_T(root, ·)`` as a PL function on a subdivision of ``G``.

    Each edge ``uv`` is mapped at constant speed onto the tree geodesic
    ``[f(u), f(v)]``. Along it ``ρ`` falls and then rises, turning at the
    projection of the root; the edge is split there so the composite is
    affine on every piece. Terminals are unchanged.
    """
    if root not in T.adjacency:
        raise RootNotInTree(f"vertex {root!r} is not in the tree")
    geo = _TreeGeometry(T)
    r = vertex_point(root)
    rho = {v: geo.dist(_as_point(f[v]), r) for v in G.vertices}
    vertices = list(G.vertices)
    edges = []
    values = dict(rho)
    fresh = 0
    for u, v, w in G.edges:
        pu, pv = _as_point(f[u]), _as_point(f[v])
        L = geo.dist(pu, pv)
        if L <= tol:
            edges.append((u, v, w))
            continue
        t = (L + rho[u] - rho[v]) / 2
        if t <= tol or t >= L - tol:
            edges.append((u, v, w))
            continue
        while ("split", fresh) in G.index:
            fresh += 1
        mid = ("split", fresh)
        fresh += 1
        vertices.append(mid)
        values[mid] = rho[u] - t
        cut = w * t / L
        edges += [(u, mid, cut), (mid, v, w - cut)]
    return MetricGraph(tuple(vertices), tuple(edges), G.terminals), PLFunction(values)


# ---------------------------------------------------------------------------
# Level-set functionals


def odd_bridges(G: MetricGraph) -> np.ndarray:
    """Boolean mask of edges whose removal separates an odd number of terminals."""
    g = G.nx_graph
    mask = np.zeros(len(G.edges), dtype=bool)
    bridges = list(nx.bridges(g))
    if not bridges:
        return mask
    core = g.copy()
    core.remove_edges_from(bridges)
    comp = {}
    for k, nodes in enumerate(nx.connected_components(core)):
        for x in nodes:
            comp[x] = k
    load = np.zeros(max(comp.values()) + 1, dtype=int)
    for t in G.terminal_pos:
        load[comp[int(t)]] += 1
    forest = nx.Graph()
    forest.add_nodes_from(range(len(load)))
    for a, b in bridges:
        forest.add_edge(comp[a], comp[b], key=g.edges[a, b]["key"])
    for piece in nx.connected_components(forest):
        root = min(piece)
        order = list(nx.dfs_preorder_nodes(forest, root))
        parent = dict(nx.dfs_predecessors(forest, root))
        total = {x: int(load[x]) for x in piece}
        for x in reversed(order):
            if x in parent:
                total[parent[x]] += total[x]
        for x, p in parent.items():
            if total[x] % 2:
                mask[forest.edges[x, p]["key"]] = True
    return mask


def cut_z2(G: MetricGraph, phi: PLFunction, t: float, tol: float = TOL_EXACT) -> int:
    """Number of points of ``{φ = t}`` whose removal leaves a component with an odd number of terminals.

    At a generic level every such point lies inside an edge; removing an
    interior point of a non-bridge leaves the graph connected, so only odd
    bridges count.
    """
    f = phi.array(G)
    if np.any(np.abs(f - t) <= tol):
        raise NonGenericLevel(f"level {t!r} hits a vertex value")
    u, v, _ = G.endpoints
    lo, hi = np.minimum(f[u], f[v]), np.maximum(f[u], f[v])
    crossing = (lo < t) & (t < hi)
    return int(np.count_nonzero(crossing & odd_bridges(G)))


def lev_z2(G: MetricGraph, phi: PLFunction) -> float:
    """``∫ Cut_Z2(φ = t) dt`` by a sweep over the sorted vertex values."""
    f = phi.array(G)
    u, v, _ = G.endpoints
    if len(u) == 0:
        return 0.0
    lo, hi = np.minimum(f[u], f[v]), np.maximum(f[u], f[v])
    odd = odd_bridges(G)
    levels = np.unique(f)
    if len(levels) < 2:
        return 0.0
    mids = (levels[:-1] + levels[1:]) / 2
    counts = ((lo[None, :] < mids[:, None]) & (mids[:, None] < hi[None, :]) & odd[None, :]).sum(axis=1)
    return float(np.sum(np.diff(levels) * counts))


def lev_z2_closed_form(G: MetricGraph, phi: PLFunction) -> float:
    """Same integral computed edge-wise: ``Σ |Δφ|`` over odd bridges."""
    f = phi.array(G)
    u, v, _ = G.endpoints
    return float(np.sum(np.abs(f[u] - f[v])[odd_bridges(G)]))


def _graph_partition(G: MetricGraph, partition: Partition2 | dict) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(partition, dict):
        plus, minus = partition["plus"], partition["minus"]
    else:
        plus, minus = partition.plus, partition.minus
    plus, minus = list(plus), list(minus)
    if len(plus) != len(minus):
        raise InvalidPartition(f"|X+| = {len(plus)} but |X-| = {len(minus)}")
    if sorted(map(repr, plus + minus)) != sorted(map(repr, G.terminals)):
        raise InvalidPartition("X+ and X- must partition the terminals")
    return (np.array([G.index[x] for x in plus], dtype=int),
            np.array([G.index[x] for x in minus], dtype=int))


def terminal_partition(G: MetricGraph, partition: Partition2 | dict) -> Partition2:
    """Translate a partition of terminal ids into positions within ``G.terminals``."""
    plus, minus = _graph_partition(G, partition)
    where = {int(p): k for k, p in enumerate(G.terminal_pos)}
    return Partition2(tuple(where[int(x)] for x in plus), tuple(where[int(x)] for x in minus))


def cut_z(G: MetricGraph, phi: PLFunction, t: float, partition) -> int:
    """``|#(A ∩ X+) - #(A ∩ X-)|`` for the sublevel set ``A = {φ <= t}``."""
    plus, minus = _graph_partition(G, partition)
    f = phi.array(G)
    return int(abs(np.count_nonzero(f[plus] <= t) - np.count_nonzero(f[minus] <= t)))


def lev_z(G: MetricGraph, phi: PLFunction, partition) -> float:
    """``∫ Cut_Z({φ <= t}) dt``; the integrand only changes at terminal values."""
    plus, minus = _graph_partition(G, partition)
    f = phi.array(G)
    levels = np.unique(np.concatenate([f[plus], f[minus]]))
    if len(levels) < 2:
        return 0.0
    below = levels[:-1]
    fp = (f[plus][None, :] <= below[:, None]).sum(axis=1)
    fm = (f[minus][None, :] <= below[:, None]).sum(axis=1)
    return float(np.sum(np.diff(levels) * np.abs(fp - fm)))


def oriented_fill(G: MetricGraph, partition) -> float:
    """``M(Π, d)`` on the terminal path metric."""
    return oriented_min_connection(shortest_path_metric(G), terminal_partition(G, partition)).value


def chain_action(C: Chain2, phi: PLFunction) -> float:
    """``Σ_{uv ∈ C} |φ(u) - φ(v)|``."""
    return float(sum(abs(phi.values[C.graph.edges[e][0]] - phi.values[C.graph.edges[e][1]])
                     for e in C.edges))


def all_edges(G: MetricGraph) -> Chain2:
    return Chain2(G, frozenset(range(len(G.edges))))
