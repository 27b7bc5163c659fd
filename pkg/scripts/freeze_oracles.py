"""Compute reference values with methods independent of the package solvers.

* matching numbers with networkx's blossom implementation,
* dual w-values with one LP that lists every matching constraint explicitly
  (no separation), solved by interior point,
* minimal-matching counts by plain enumeration.

Writes tests/data/oracles.json. Only numpy/scipy/networkx are used here, plus
the package's instance generators to draw the inputs.
"""

import argparse
import itertools
import json
from pathlib import Path

import networkx as nx
import numpy as np
from scipy.optimize import linprog

from matchdual.instances import random_integer_metric, random_metric, six_point_example


def pairings(items):
    if not items:
        yield []
        return
    a = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for tail in pairings(rest):
            yield [(a, items[k])] + tail


def nx_matching_value(d):
    n = len(d)
    g = nx.Graph()
    for i, j in itertools.combinations(range(n), 2):
        g.add_edge(i, j, weight=float(d[i][j]))
    m = nx.min_weight_matching(g)
    return float(sum(d[i][j] for i, j in m))


def full_lp_dual(d):
    n = len(d)
    pairs = list(itertools.combinations(range(n), 2))
    idx = {p: k for k, p in enumerate(pairs)}
    target = min(sum(d[i][j] for i, j in m) for m in pairings(list(range(n))))
    rows, rhs = [], []
    for i, j, k in itertools.permutations(range(n), 3):
        if i < k:
            r = np.zeros(len(pairs))
            r[idx[(i, k)]] += 1
            r[idx[tuple(sorted((i, j)))]] -= 1
            r[idx[tuple(sorted((j, k)))]] -= 1
            rows.append(r)
            rhs.append(0.0)
    for m in pairings(list(range(n))):
        r = np.zeros(len(pairs))
        for p in m:
            r[idx[p]] = -1
        rows.append(r)
        rhs.append(-target)
    res = linprog(np.ones(len(pairs)), A_ub=np.array(rows), b_ub=np.array(rhs),
                  bounds=[(0, d[i][j]) for i, j in pairs], method="highs-ipm")
    assert res.status == 0, res.message
    return float(res.fun), float(target)


def count_min_matchings(d, tol=1e-9):
    vals = [sum(d[i][j] for i, j in m) for m in pairings(list(range(len(d))))]
    best = min(vals)
    return sum(v <= best + tol for v in vals), best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "tests" / "data" / "oracles.json"))
    args = ap.parse_args()
    rng = np.random.default_rng(20240601)
    out = {"matching": [], "dual": [], "enumeration": []}
    for n, kind in [(16, "uniform"), (24, "uniform"), (40, "uniform"), (16, "integer"),
                    (30, "integer"), (50, "integer")]:
        M = random_metric(n, rng) if kind == "uniform" else random_integer_metric(n, rng)
        d = M.dist.tolist()
        out["matching"].append({"kind": kind, "d": d, "value": nx_matching_value(d)})
    for n in (4, 6, 6, 6, 8, 8):
        d = random_metric(n, rng).dist.tolist()
        w, m = full_lp_dual(d)
        out["dual"].append({"d": d, "w": w, "m": m})
    six = six_point_example().dist.tolist()
    w, m = full_lp_dual(six)
    out["dual"].append({"d": six, "w": w, "m": m, "name": "six_point"})
    for n in (6, 8, 10):
        d = random_integer_metric(n, rng, high=2).dist.tolist()
        count, best = count_min_matchings(d)
        out["enumeration"].append({"d": d, "count": count, "value": best})
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps(out, indent=1))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
