"""Metric trees: realization of tree-like pseudometrics and dual certificates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .dual import DualResult, minimize_dual
from .errors import (IndexOutOfRange, NotTreeLike,
                     NumericalDegeneracy)
from .matching import Matching, min_matching
from .metric import TOL_GEOM, FiniteMetric, is_tree_like


@dataclass(frozen=True, eq=False)
class MetricTree:
    """Finite weighted tree with points ``0..n-1`` embedded at vertices.

    ``embed[i]`` is the vertex carrying point ``i``; several points may share
    a vertex (zero-distance classes) and vertices need not carry points.
    """

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, float], ...]
    embed: tuple[int, ...]

    @cached_property
    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for k, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, k))
            adj[v].append((u, k))
        return adj

    @property
    def n_points(self) -> int:
        return len(self.embed)

    def length(self, e: int) -> float:
        return self.edges[e][2]

    def distances_from(self, root: int) -> dict[int, float]:
        dist = {root: 0.0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, e in self.adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + self.edges[e][2]
                    queue.append(v)
        return dist

    def parents(self, root: int) -> dict[int, tuple[int, int]]:
        """``child -> (parent, edge)`` for the tree hanging from ``root``."""
        par: dict[int, tuple[int, int]] = {root: (-1, -1)}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, e in self.adjacency[u]:
                if v not in par:
                    par[v] = (u, e)
                    queue.append(v)
        return par

    def path_edges(self, u: int, v: int) -> list[int]:
        """Edge indices along the unique path from ``u`` to ``v``, in order."""
        par = self.parents(v)
        out = []
        while u != v:
            u, e = par[u]
            out.append(e)
        return out

    def point_distances(self) -> np.ndarray:
        verts = sorted(set(self.embed))
        rows = {v: self.distances_from(v) for v in verts}
        return np.array([[rows[a][b] for b in self.embed] for a in self.embed])

    def total_length(self) -> float:
        return float(sum(e[2] for e in self.edges))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def branch_vertices(self) -> set[int]:
        """Vertices of degree at least 3."""
        return {v for v in self.vertices if self.degree(v) >= 3}

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [[u, v, float(w)] for u, v, w in self.edges],
                "embed": {str(i): v for i, v in enumerate(self.embed)}}

    @classmethod
    def from_json(cls, obj: dict) -> MetricTree:
        embed = obj["embed"]
        n = len(embed)
        return cls(tuple(int(v) for v in obj["vertices"]),
                   tuple((int(u), int(v), float(w)) for u, v, w in obj["edges"]),
                   tuple(int(embed[str(i)]) for i in range(n)))


def _zero_classes(D: np.ndarray, tol: float) -> np.ndarray:
    """Representative (smallest index) of each point's ``D <= tol`` class."""
    n = D.shape[0]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in zip(*np.nonzero(np.triu(D <= tol, 1))):
        ri, rj = find(int(i)), find(int(j))
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    return np.array([find(i) for i in range(n)])


def realize_tree(D: FiniteMetric, tol: float = TOL_GEOM, check: bool = True) -> MetricTree:
    """Build a metric tree reproducing a tree-like pseudometric.

    Points are inserted one at a time (diameter pair first, then by largest
    total distance to the points already placed). A new point ``x`` hangs off
    the path from the first point ``a`` to the point ``b`` maximizing the
    Gromov product ``(x|b)_a``, at distance ``(x|b)_a`` from ``a``.
    """
    Dm = np.asarray(D.dist, dtype=float)
    n = D.n
    if check:
        fp = is_tree_like(D, tol)
        if not fp:
            raise NotTreeLike(fp.quadruple, fp.violation)
    snap = tol / 100
    rep = _zero_classes(Dm, tol)
    reps = sorted(set(rep.tolist()))
    if len(reps) == 1:
        return MetricTree((0,), (), tuple(0 for _ in range(n)))

    adj: dict[int, dict[int, float]] = {}
    where: dict[int, int] = {}
    counter = [0]

    def new_vertex():
        v = counter[0]
        counter[0] += 1
        adj[v] = {}
        return v

    def link(u, v, w):
        adj[u][v] = w
        adj[v][u] = w

    def unlink(u, v):
        del adj[u][v]
        del adj[v][u]

    def path(u, v):
        par = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for y in adj[x]:
                if y not in par:
                    par[y] = x
                    queue.append(y)
        out = [v]
        while out[-1] != u:
            out.append(par[out[-1]])
        return out[::-1]

    sub = Dm[np.ix_(reps, reps)]
    i0, j0 = np.unravel_index(int(np.argmax(sub)), sub.shape)
    a, b = reps[i0], reps[j0]
    where[a] = new_vertex()
    where[b] = new_vertex()
    link(where[a], where[b], Dm[a, b])
    placed = [a, b]
    remaining = [r for r in reps if r not in (a, b)]

    while remaining:
        totals = Dm[np.ix_(remaining, placed)].sum(axis=1)
        x = remaining.pop(int(np.argmax(totals)))
        others = placed[1:]
        gp = (Dm[x, a] + Dm[others, a] - Dm[x, others]) / 2
        k = int(np.argmax(gp))
        bstar = others[k]
        t = float(np.clip(gp[k], 0.0, Dm[a, bstar]))
        pendant = Dm[x, a] - t
        if pendant < -tol:
            raise NumericalDegeneracy(f"point {x} attaches with negative length {pendant:.3e}")
        pendant = max(pendant, 0.0)

        route = path(where[a], where[bstar])
        cum = 0.0
        attach = route[-1]
        for p, q in zip(route, route[1:]):
            w = adj[p][q]
            if t <= cum + snap:
                attach = p
                break
            if t >= cum + w - snap:
                cum += w
                continue
            s = new_vertex()
            unlink(p, q)
            link(p, s, t - cum)
            link(s, q, cum + w - t)
            attach = s
            break
        if pendant <= snap:
            where[x] = attach
        else:
            where[x] = new_vertex()
            link(attach, where[x], pendant)
        placed.append(x)

    edges = sorted((u, v, w) for u in adj for v, w in adj[u].items() if u < v)
    tree = MetricTree(tuple(sorted(adj)), tuple((u, v, float(w)) for u, v, w in edges),
                      tuple(where[rep[i]] for i in range(n)))
    err = float(np.max(np.abs(tree.point_distances() - Dm)))
    if err > tol:
        raise NumericalDegeneracy(f"tree reproduces distances only to {err:.3e}")
    return tree


def tree_total_length(tree: MetricTree) -> float:
    return tree.total_length()


@dataclass(frozen=True)
class PathSet:
    """One edge set per matched pair: the tree path between the pair's images."""

    pairs: tuple[tuple[int, int], ...]
    arcs: tuple[frozenset[int], ...]

    def covered(self) -> frozenset[int]:
        return frozenset().union(*self.arcs) if self.arcs else frozenset()


def matching_paths(tree: MetricTree, matching: Matching) -> PathSet:
    matching.check(tree.n_points)
    arcs = tuple(frozenset(tree.path_edges(tree.embed[i], tree.embed[j])) for i, j in matching.pairs)
    return PathSet(matching.pairs, arcs)


def _subtree_counts(tree: MetricTree) -> dict[int, int]:
    """For each edge, the number of embedded points (with multiplicity) on its child side."""
    root = tree.vertices[0]
    par = tree.parents(root)
    load = {v: 0 for v in tree.vertices}
    for v in tree.embed:
        load[v] += 1
    dist = tree.distances_from(root)
    order = sorted(tree.vertices, key=lambda v: -dist[v])
    counts = {}
    for v in order:
        p, e = par[v]
        if p >= 0:
            counts[e] = load[v]
            load[p] += load[v]
    return counts


@dataclass(frozen=True)
class CertificateReport:
    pair_isometry: bool
    path_overlap_le_point: bool
    coverage_A_pi_equals_T: bool
    parity_odd_components: bool
    H1: float
    m: float
    length_gap: float
    max_distance_error: float
    max_overlap: float
    uncovered_length: float

    @property
    def ok(self) -> bool:
        return (self.pair_isometry and self.path_overlap_le_point
                and self.coverage_A_pi_equals_T and self.parity_odd_components)

    def to_json(self) -> dict:
        return {"pair_isometry": self.pair_isometry,
                "path_overlap_le_point": self.path_overlap_le_point,
                "coverage_A_pi_equals_T": self.coverage_A_pi_equals_T,
                "parity_odd_components": self.parity_odd_components,
                "lengths": {"H1": self.H1, "m": self.m, "|H1-m|": self.length_gap},
                "max_distance_error": self.max_distance_error,
                "max_overlap": self.max_overlap,
                "uncovered_length": self.uncovered_length,
                "ok": self.ok}


@dataclass(frozen=True)
class DualCertificate:
    base: FiniteMetric
    dual: FiniteMetric
    tree: MetricTree
    matching: Matching
    value: float
    report: CertificateReport | None = None
    dual_result: DualResult | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        out = {"value": float(self.value),
               "m": float(self.value),
               "D": [[float(x) for x in row] for row in self.dual.dist],
               "tree": self.tree.to_json(),
               "pairs": self.matching.to_json(),
               "H1": self.tree.total_length()}
        if self.report is not None:
            out["report"] = self.report.to_json()
        return out


def verify_certificate(cert: DualCertificate, tol: float = TOL_GEOM) -> CertificateReport:
    tree = cert.tree
    d = np.asarray(cert.base.dist, dtype=float)
    Dm = np.asarray(cert.dual.dist, dtype=float)
    dT = tree.point_distances()
    max_err = float(np.max(np.abs(dT - Dm)))
    iso = all(abs(dT[i, j] - d[i, j]) <= tol for i, j in cert.matching.pairs)

    paths = matching_paths(tree, cert.matching)
    overlap = 0.0
    for p in range(len(paths.arcs)):
        for q in range(p + 1, len(paths.arcs)):
            common = paths.arcs[p] & paths.arcs[q]
            overlap = max(overlap, sum(tree.length(e) for e in common))
    covered = paths.covered()
    H1 = tree.total_length()
    uncovered = H1 - sum(tree.length(e) for e in covered)

    counts = _subtree_counts(tree)
    parity = all(counts[e] % 2 == 1 and (tree.n_points - counts[e]) % 2 == 1 for e in covered)
    m = float(cert.value)
    return CertificateReport(
        pair_isometry=iso, path_overlap_le_point=overlap <= tol,
        coverage_A_pi_equals_T=uncovered <= tol, parity_odd_components=parity,
        H1=H1, m=m, length_gap=abs(H1 - m), max_distance_error=max_err,
        max_overlap=overlap, uncovered_length=uncovered)


def build_certificate(metric: FiniteMetric, tol: float = TOL_GEOM,
                      dual: DualResult | None = None) -> DualCertificate:
    """Dualize, realize the dual as a tree, match, and verify."""
    base = metric.to_float()
    dual = dual if dual is not None else minimize_dual(base)
    tree = realize_tree(dual.D, tol)
    match = min_matching(base)
    cert = DualCertificate(base, dual.D, tree, match.matching, match.value, None, dual)
    report = verify_certificate(cert, tol)
    return DualCertificate(base, dual.D, tree, match.matching, match.value, report, dual)


def embed_index(tree: MetricTree, i: int) -> int:
    if not 0 <= i < tree.n_points:
        raise IndexOutOfRange(f"point {i} not embedded")
    return tree.embed[i]
