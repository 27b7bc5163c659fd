"""The w-minimal pseudometric below d with the same matching number.

Given ``D <= d`` the condition ``m(X, D) = m(X, d)`` is the same as
``m(pi, D) >= m(X, d)`` for every matching ``pi``, so the feasible set is a
polytope. ``minimize_dual`` minimizes ``w(D) = sum_{i<j} D(i,j)`` over it by
cutting planes: triangle inequalities are present from the start and matching
constraints are separated lazily with ``min_matching``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix, vstack

from .errors import (DimensionMismatch, IterationLimit, LPNumericalFailure,
                     StallDetected)
from .matching import Matching, min_matching, minimal_pairs
from .metric import (TOL_EXACT, TOL_GEOM, FiniteMetric, four_point_violation,
                     triangle_slack)

CUT_TOL = 1e-7
MAX_CUTS = 500


@dataclass(frozen=True)
class DualResult:
    D: FiniteMetric
    w_value: float
    iterations: int
    cuts_used: int
    m: float = 0.0
    cuts: tuple[Matching, ...] = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {"D": [[float(x) for x in row] for row in self.D.dist],
                "w": float(self.w_value), "m": float(self.m), "cuts": self.cuts_used}


def _pair_index(n: int):
    iu = np.triu_indices(n, 1)
    index = np.full((n, n), -1, dtype=int)
    index[iu] = np.arange(len(iu[0]))
    index.T[iu] = np.arange(len(iu[0]))
    return iu, index


def _triangle_rows(n: int, index: np.ndarray):
    """Sparse rows ``x_ik - x_ij - x_jk <= 0`` for every triple and every long side."""
    tri = np.array([(i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)],
                   dtype=int).reshape(-1, 3)
    if len(tri) == 0:
        return None
    i, j, k = tri.T
    sides = [(index[i, k], index[i, j], index[j, k]),
             (index[i, j], index[i, k], index[j, k]),
             (index[j, k], index[i, j], index[i, k])]
    rows, cols, vals = [], [], []
    r0 = 0
    t = len(tri)
    for long, a, b in sides:
        r = np.arange(r0, r0 + t)
        rows += [r, r, r]
        cols += [long, a, b]
        vals += [np.ones(t), -np.ones(t), -np.ones(t)]
        r0 += t
    npairs = n * (n - 1) // 2
    return coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                      shape=(r0, npairs)).tocsr()


def _cut_row(matching: Matching, index: np.ndarray, npairs: int):
    cols = [index[i, j] for i, j in matching.pairs]
    return coo_matrix((-np.ones(len(cols)), (np.zeros(len(cols), dtype=int), cols)),
                      shape=(1, npairs)).tocsr()


def minimize_dual(metric: FiniteMetric, tol: float = CUT_TOL, max_cuts: int = MAX_CUTS) -> DualResult:
    """Cutting-plane LP for the w-minimal ``D``.

    Raises ``IterationLimit`` after ``max_cuts`` cuts and ``LPNumericalFailure``
    if the LP solver fails or returns a point violating an existing cut.
    """
    base = metric.to_float()
    n = base.n
    d = np.asarray(base.dist, dtype=float)
    target = min_matching(base).value
    if n == 2:
        return DualResult(base, float(d[0, 1]), 0, 0, target)
    iu, index = _pair_index(n)
    npairs = len(iu[0])
    upper = d[iu]
    tri = _triangle_rows(n, index)
    cuts: list[Matching] = []
    cut_rows = []
    c = np.ones(npairs)
    options = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}
    iterations = 0
    while True:
        iterations += 1
        blocks = ([tri] if tri is not None else []) + cut_rows
        A = vstack(blocks).tocsr()
        b = np.concatenate([np.zeros(tri.shape[0]) if tri is not None else np.zeros(0),
                            -target * np.ones(len(cut_rows))])
        res = linprog(c, A_ub=A, b_ub=b, bounds=np.column_stack([np.zeros(npairs), upper]),
                      method="highs-ds", options=options)
        if res.status != 0:
            raise LPNumericalFailure(f"LP solver status {res.status}: {res.message}",
                                     residual=float("nan"))
        x = np.clip(res.x, 0.0, upper)
        D = np.zeros((n, n))
        D[iu] = x
        D = D + D.T
        cand = FiniteMetric(D)
        sep = min_matching(cand)
        if sep.value >= target - tol:
            return DualResult(cand, float(x.sum()), iterations, len(cuts), target, tuple(cuts))
        if sep.matching in cuts:
            residual = target - sep.value
            raise LPNumericalFailure(
                f"LP point violates an existing cut by {residual:.3e}", residual=float(residual))
        if len(cuts) >= max_cuts:
            raise IterationLimit(f"no convergence after {max_cuts} matching cuts")
        cuts.append(sep.matching)
        cut_rows.append(_cut_row(sep.matching, index, npairs))


@dataclass(frozen=True)
class DualReport:
    dominated: bool
    pseudometric: bool
    matching_number_preserved: bool
    tree_like: bool
    all_pairs_minimal: bool | None
    all_pairs_checked: bool
    m_d: float
    m_D: float
    max_excess: float
    triangle_slack: float
    four_point_violation: float
    missing_pairs: tuple = ()

    @property
    def ok(self) -> bool:
        return (self.dominated and self.pseudometric and self.matching_number_preserved
                and self.tree_like and self.all_pairs_minimal is not False)

    def to_json(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        out["missing_pairs"] = [list(p) for p in self.missing_pairs]
        out["ok"] = self.ok
        return out


def verify_dual(metric: FiniteMetric, D: FiniteMetric, tol: float = TOL_GEOM) -> DualReport:
    """Check the conclusions expected of a dual metric ``D`` for ``d``."""
    if metric.n != D.n:
        raise DimensionMismatch(f"metrics on {metric.n} and {D.n} points")
    d = np.asarray(metric.dist, dtype=float)
    Dm = np.asarray(D.dist, dtype=float)
    n = metric.n
    excess = float(np.max(Dm - d))
    slack, _ = triangle_slack(Dm)
    sym = bool(np.allclose(Dm, Dm.T, atol=tol)) and float(np.min(Dm)) >= -tol \
        and float(np.max(np.abs(np.diag(Dm)))) <= tol
    fp, _ = four_point_violation(FiniteMetric(Dm))
    m_d = min_matching(metric.to_float()).value
    m_D = min_matching(FiniteMetric(Dm)).value
    checked = n <= 12
    all_pairs = None
    missing: tuple = ()
    if checked:
        found = minimal_pairs(FiniteMetric(Dm), tol)
        missing = tuple(p for p in zip(*np.triu_indices(n, 1)) if (int(p[0]), int(p[1])) not in found)
        missing = tuple((int(a), int(b)) for a, b in missing)
        all_pairs = not missing
    return DualReport(
        dominated=excess <= TOL_EXACT,
        pseudometric=sym and slack >= -max(tol, CUT_TOL),
        matching_number_preserved=abs(m_D - m_d) <= tol,
        tree_like=float(fp) <= tol,
        all_pairs_minimal=all_pairs,
        all_pairs_checked=checked,
        m_d=m_d, m_D=m_D, max_excess=excess, triangle_slack=float(slack),
        four_point_violation=float(fp), missing_pairs=missing)


# ---------------------------------------------------------------------------
# Coordinate descent


def interval_family(D: np.ndarray, i: int, j: int, tol: float) -> np.ndarray:
    """Boolean matrix of pairs ``{k,l}`` with ``[i,j] ⊂ [k,l]`` or ``[j,i] ⊂ [k,l]``."""
    # [i,j] ⊂ [k,l]  <=>  D(k,i) + D(i,j) + D(j,l) = D(k,l)
    a = D[:, i][:, None] + D[i, j] + D[j, :][None, :]
    fam = np.abs(a - D) <= tol
    fam |= fam.T
    np.fill_diagonal(fam, False)
    return fam


def _triangle_step_bound(D: np.ndarray, chi: np.ndarray) -> float:
    """Largest ``eps`` keeping ``D - eps * chi`` a pseudometric."""
    n = D.shape[0]
    bound = np.inf
    for b in range(n):
        # triple (a, b, c): D(a,c) <= D(a,b) + D(b,c)
        slack = D[:, b][:, None] + D[b, :][None, :] - D
        coef = chi[:, b][:, None] + chi[b, :][None, :] - chi
        pos = coef > 0
        if np.any(pos):
            bound = min(bound, float(np.min(np.maximum(slack[pos], 0.0) / coef[pos])))
    return bound


def _matching_step_bound(D: np.ndarray, chi: np.ndarray, target: float, eps: float,
                         tol: float) -> float:
    """Largest ``eps' <= eps`` with ``m(pi, D - eps' chi) >= target`` for all ``pi`` (Dinkelbach)."""
    for _ in range(200):
        res = min_matching(FiniteMetric(D - eps * chi))
        if res.value >= target - tol:
            return eps
        pairs = res.matching.pairs
        count = sum(int(chi[a, b]) for a, b in pairs)
        base = sum(D[a, b] for a, b in pairs)
        new = max((base - target) / count, 0.0)
        if new >= eps:
            return max(eps - tol, 0.0)
        eps = new
    raise IterationLimit("line search did not converge")


def dual_via_descent(metric: FiniteMetric, tol: float = TOL_EXACT,
                     max_sweeps: int = 1000) -> DualResult:
    """Lower the interval families ``P_ij`` one at a time by the longest feasible step.

    Stops when a full sweep over pairs makes no progress. If the fixed point
    is not tree-like, ``StallDetected`` is raised carrying the partial result.
    """
    base = metric.to_float()
    D = np.array(base.dist, dtype=float)
    n = base.n
    target = min_matching(base).value
    scale = max(float(D.max()), 1.0)
    eq_tol = 1e-9 * scale
    min_step = 1e-10 * scale
    moves = 0
    for sweep in range(max_sweeps):
        progressed = False
        for i in range(n):
            for j in range(i + 1, n):
                if D[i, j] <= min_step:
                    continue
                fam = interval_family(D, i, j, eq_tol)
                chi = fam.astype(float)
                eps = min(float(np.min(D[fam])), _triangle_step_bound(D, chi))
                if eps <= min_step:
                    continue
                eps = _matching_step_bound(D, chi, target, eps, tol)
                if eps <= min_step:
                    continue
                D = np.maximum(D - eps * chi, 0.0)
                moves += 1
                progressed = True
        if not progressed:
            break
    else:
        raise IterationLimit(f"descent did not settle after {max_sweeps} sweeps")
    iu = np.triu_indices(n, 1)
    result = DualResult(FiniteMetric(D), float(D[iu].sum()), sweep + 1, moves, target)
    fp, quad = four_point_violation(result.D)
    if fp > TOL_GEOM:
        raise StallDetected(f"descent stopped at a non-tree-like point (four-point violation "
                            f"{float(fp):.3e} at {quad})", result=result)
    return result
