"""JSON and CSV readers/writers for metrics, points, graphs and functions."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .calibration import MetricGraph, PLFunction
from .errors import DimensionMismatch, InvalidGraph, InvalidPartition
from .matching import Partition2
from .metric import TOL_EXACT, FiniteMetric, from_points, validate_metric


def dumps(obj) -> str:
    """Deterministic JSON; floats use ``repr`` so they round-trip bit for bit."""
    return json.dumps(_plain(obj), sort_keys=False, allow_nan=False)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def read_json(path) -> dict:
    return json.loads(Path(path).read_text())


def metric_from_json(obj, tol: float = TOL_EXACT, exact: bool = False) -> FiniteMetric:
    if isinstance(obj, dict):
        if "d" not in obj:
            raise DimensionMismatch("metric JSON needs a 'd' matrix")
        d = obj["d"]
        if "n" in obj and int(obj["n"]) != len(d):
            raise DimensionMismatch(f"'n' = {obj['n']} but the matrix has {len(d)} rows")
    else:
        d = obj
    if exact:
        return validate_metric(d, tol, exact=True)
    return validate_metric(d, tol)


def load_metric(path, tol: float = TOL_EXACT, exact: bool = False) -> FiniteMetric:
    return metric_from_json(read_json(path), tol, exact)


def load_points(path) -> np.ndarray:
    rows = []
    with open(path, newline="") as fh:
        for line in csv.reader(fh):
            cells = [c.strip() for c in line if c.strip()]
            if not cells:
                continue
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                if rows:
                    raise DimensionMismatch(f"non-numeric row {line!r}") from None
                continue   # header
    if not rows:
        raise DimensionMismatch("no points in file")
    if len({len(r) for r in rows}) != 1:
        raise DimensionMismatch("points have unequal dimensions")
    return np.array(rows)


def load_points_metric(path, norm="l2") -> FiniteMetric:
    return from_points(load_points(path), norm)


def write_points(path, points) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for p in np.atleast_2d(points):
            w.writerow([repr(float(x)) for x in p])


def graph_from_json(obj) -> tuple[MetricGraph, Partition2 | None]:
    try:
        verts = [_vid(v) for v in obj["vertices"]]
        edges = [(_vid(u), _vid(v), float(w)) for u, v, w in obj["edges"]]
        terms = [_vid(t) for t in obj.get("terminals", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraph(f"malformed graph JSON: {exc}") from None
    G = MetricGraph(tuple(verts), tuple(edges), tuple(terms))
    part = None
    if obj.get("partition") is not None:
        part = partition_from_json(obj["partition"])
    return G, part


def _vid(v):
    return v if isinstance(v, (int, str)) else int(v)


def partition_from_json(obj) -> Partition2:
    try:
        return Partition2(tuple(obj["plus"]), tuple(obj["minus"]))
    except (KeyError, TypeError) as exc:
        raise InvalidPartition(f"malformed partition JSON: {exc}") from None


def load_graph(path):
    return graph_from_json(read_json(path))


def function_from_json(obj, G: MetricGraph) -> PLFunction:
    vals = obj.get("values", obj)
    by_str = {str(k): float(v) for k, v in vals.items()}
    missing = [v for v in G.vertices if str(v) not in by_str]
    if missing:
        raise InvalidGraph(f"function has no value at vertices {missing[:5]}")
    return PLFunction({v: by_str[str(v)] for v in G.vertices})
