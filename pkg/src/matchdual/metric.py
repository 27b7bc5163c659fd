"""Finite pseudometric spaces and the checks used throughout the package."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (AsymmetricInput, DimensionMismatch, IndexOutOfRange,
                     InvalidNorm, NegativeEntry, NonFiniteEntry,
                     NonzeroDiagonal, TriangleViolation)

# solver-value comparisons
TOL_EXACT = 1e-9
# derived tree / four-point checks
TOL_GEOM = 1e-6


@dataclass(frozen=True, eq=False)
class FiniteMetric:
    """A symmetric nonnegative distance matrix on points ``0..n-1``.

    Zero off-diagonal entries are allowed (pseudometric). The matrix is stored
    read-only; ``float64`` by default, or an object array of ``Fraction`` when
    built with ``exact=True``.
    """

    dist: np.ndarray

    def __post_init__(self):
        d = self.dist
        if not isinstance(d, np.ndarray) or d.dtype != object:
            d = np.array(d, dtype=float)
        else:
            d = d.copy()
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 1:
            raise DimensionMismatch(f"expected a nonempty square matrix, got shape {d.shape}")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def exact(self) -> bool:
        return self.dist.dtype == object

    def __getitem__(self, ij):
        return self.dist[ij]

    def __eq__(self, other):
        if not isinstance(other, FiniteMetric):
            return NotImplemented
        return self.dist.shape == other.dist.shape and bool(np.all(self.dist == other.dist))

    def __hash__(self):
        return hash((self.n, self.dist.tobytes() if not self.exact else tuple(self.dist.flat)))

    def diameter(self) -> float:
        return float(np.max(self.dist))

    def scaled(self, factor: float) -> FiniteMetric:
        return FiniteMetric(self.dist * factor)

    def permuted(self, perm: Sequence[int]) -> FiniteMetric:
        p = np.asarray(perm)
        return FiniteMetric(self.dist[np.ix_(p, p)])

    def to_float(self) -> FiniteMetric:
        if not self.exact:
            return self
        return FiniteMetric(self.dist.astype(float))

    def to_json(self) -> dict:
        return {"n": self.n, "d": [[float(x) for x in row] for row in self.dist]}


def _as_exact(matrix) -> np.ndarray:
    rows = [[Fraction(x) if not isinstance(x, str) else Fraction(x) for x in row] for row in matrix]
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != out.shape[1]:
            raise DimensionMismatch("ragged matrix")
        out[i, :] = row
    return out


def triangle_slack(d: np.ndarray) -> tuple[float, tuple[int, int, int]]:
    """Smallest value of ``d[i,j] + d[j,k] - d[i,k]`` and the triple attaining it."""
    n = d.shape[0]
    worst = None
    triple = (0, 0, 0)
    for j in range(n):
        # slack[i, k] = d[i, j] + d[j, k] - d[i, k]
        slack = d[:, j][:, None] + d[j, :][None, :] - d
        idx = int(np.argmin(slack))
        val = slack.flat[idx]
        if worst is None or val < worst:
            worst = val
            triple = (idx // n, j, idx % n)
    return worst, triple


def validate_metric(matrix, tol: float = TOL_EXACT, exact: bool = False) -> FiniteMetric:
    """Check a square matrix and wrap it as a :class:`FiniteMetric`.

    With ``exact=True`` entries are converted to ``Fraction`` and every check
    is done with zero tolerance.
    """
    if exact:
        d = _as_exact(matrix)
        tol = 0
    else:
        try:
            d = np.array(matrix, dtype=float)
        except (TypeError, ValueError) as exc:
            raise DimensionMismatch(f"not a numeric matrix: {exc}") from None
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 1:
        raise DimensionMismatch(f"expected a nonempty square matrix, got shape {d.shape}")
    if not exact and not np.all(np.isfinite(d)):
        raise NonFiniteEntry("matrix has non-finite entries")
    diag = np.array([d[i, i] for i in range(d.shape[0])])
    if np.any(np.abs(diag) > tol):
        i = int(np.argmax(np.abs(diag)))
        raise NonzeroDiagonal(f"d[{i}][{i}] = {d[i, i]!r}")
    asym = np.abs(d - d.T)
    if np.any(asym > tol):
        i, j = np.unravel_index(int(np.argmax(asym)), asym.shape)
        raise AsymmetricInput(f"d[{i}][{j}] = {d[i, j]!r} but d[{j}][{i}] = {d[j, i]!r}")
    if np.any(d < -tol):
        i, j = np.unravel_index(int(np.argmin(d)), d.shape)
        raise NegativeEntry(f"d[{i}][{j}] = {d[i, j]!r}")
    slack, (i, j, k) = triangle_slack(d)
    if slack < -tol:
        raise TriangleViolation(i, j, k, float(-slack))
    if not exact:
        # absorb sub-tolerance noise so downstream code sees an honest pseudometric
        d = np.maximum((d + d.T) / 2, 0.0)
        np.fill_diagonal(d, 0.0)
    return FiniteMetric(d)


class FourPointCheck(NamedTuple):
    tree_like: bool
    quadruple: tuple[int, int, int, int] | None
    violation: float

    def __bool__(self):
        return self.tree_like


def four_point_violation(metric: FiniteMetric):
    """Worst violation of the four-point condition over all quadruples.

    For each quadruple the three pair-sums are compared; the condition holds
    iff the two largest are equal, so the violation is ``largest - middle``.
    Returns ``(violation, (x1, x2, x3, x4))`` where ``d(x1,x3) + d(x2,x4)`` is
    the offending sum.
    """
    d = metric.dist
    n = metric.n
    if n < 4:
        return 0, None
    best = None
    best_quad = None
    chunk = max(1, 2_000_000 // (n * n))
    for i in range(n):
        for j0 in range(0, n, chunk):
            js = slice(j0, min(n, j0 + chunk))
            a = d[i, js][:, None, None] + d[None, :, :]       # d(i,j) + d(k,l)
            b = d[i][None, :, None] + d[js, None, :]          # d(i,k) + d(j,l)
            c = d[i][None, None, :] + d[js, :, None]          # d(i,l) + d(j,k)
            top = np.maximum(np.maximum(a, b), c)
            low = np.minimum(np.minimum(a, b), c)
            viol = top - (a + b + c - top - low)
            idx = int(np.argmax(viol))
            v = viol.flat[idx]
            if best is None or v > best:
                best = v
                j, k, l = np.unravel_index(idx, viol.shape)
                best_quad = (i, int(j) + j0, int(k), int(l))
    i, j, k, l = best_quad
    # arrange so that x1x3 + x2x4 is the strict maximum
    sums = {(i, k, j, l): d[i, j] + d[k, l],   # x1=i, x3=j, x2=k, x4=l
            (i, j, k, l): d[i, k] + d[j, l],
            (i, j, l, k): d[i, l] + d[j, k]}
    x1, x2, x3, x4 = max(sums, key=lambda q: sums[q])
    return best, (x1, x2, x3, x4)


def is_tree_like(metric: FiniteMetric, tol: float = TOL_GEOM) -> FourPointCheck:
    """Exhaustive O(n^4) four-point check.

    Invariant under permutations of the points and under scaling by a positive
    factor (relative to ``tol``).
    """
    if metric.exact:
        tol = 0
    violation, quad = four_point_violation(metric)
    if quad is None or violation <= tol:
        return FourPointCheck(True, None, max(float(violation), 0.0))
    return FourPointCheck(False, quad, float(violation))


def metric_delta(m1: FiniteMetric, m2: FiniteMetric) -> float:
    if m1.n != m2.n:
        raise DimensionMismatch(f"metrics on {m1.n} and {m2.n} points")
    return float(np.max(np.abs(m1.dist - m2.dist)))


def restrict(metric: FiniteMetric, indices: Sequence[int]) -> FiniteMetric:
    """Induced pseudometric on a multiset of points; repeats sit at distance 0."""
    idx = np.asarray(list(indices), dtype=int)
    if idx.size == 0:
        raise IndexOutOfRange("empty index list")
    if np.any(idx < 0) or np.any(idx >= metric.n):
        raise IndexOutOfRange(f"indices must lie in [0, {metric.n})")
    return FiniteMetric(metric.dist[np.ix_(idx, idx)])


def parse_norm(norm) -> float:
    """Map ``'l1' | 'l2' | 'linf' | 'lp:P' | ('lp', P) | P`` to a vector-norm order."""
    if isinstance(norm, tuple) and len(norm) == 2 and norm[0] == "lp":
        p = float(norm[1])
    elif isinstance(norm, (int, float)) and not isinstance(norm, bool):
        p = float(norm)
    elif isinstance(norm, str):
        key = norm.strip().lower()
        if key == "l1":
            return 1.0
        if key == "l2":
            return 2.0
        if key in ("linf", "l_inf", "inf"):
            return np.inf
        if key.startswith("lp:") or key.startswith("lp(") or key.startswith("l"):
            body = key.removeprefix("lp:").removeprefix("lp(").removeprefix("l").rstrip(")")
            try:
                p = float(body)
            except ValueError:
                raise InvalidNorm(f"unknown norm {norm!r}") from None
        else:
            raise InvalidNorm(f"unknown norm {norm!r}")
    else:
        raise InvalidNorm(f"unknown norm {norm!r}")
    if not p >= 1:
        raise InvalidNorm(f"p-norm needs p >= 1, got {p}")
    return p


def from_points(points, norm="l2") -> FiniteMetric:
    p = parse_norm(norm)
    try:
        pts = np.array(points, dtype=float)
    except ValueError:
        raise DimensionMismatch("points have unequal dimensions") from None
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise DimensionMismatch(f"expected a list of vectors, got shape {pts.shape}")
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.linalg.norm(diff, ord=p, axis=-1)
    d = (d + d.T) / 2
    np.fill_diagonal(d, 0.0)
    return FiniteMetric(d)


def interval_contains(metric: FiniteMetric, a: int, b: int, c: int, d: int,
                      tol: float = TOL_EXACT) -> bool:
    """``[a,b] ⊂ [c,d]``: ``|ca| + |ab| + |bd| = |cd|`` up to ``tol``."""
    D = metric.dist
    if metric.exact:
        tol = 0
    return bool(abs(D[c, a] + D[a, b] + D[b, d] - D[c, d]) <= tol)


def shortest_path_closure(matrix: np.ndarray) -> np.ndarray:
    """Floyd-Warshall repair of a symmetric nonnegative matrix into a pseudometric."""
    d = np.array(matrix, dtype=float)
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    for k in range(d.shape[0]):
        d = np.minimum(d, d[:, k][:, None] + d[k, :][None, :])
    return d
