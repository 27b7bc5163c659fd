"""Command-line front end: ``matchdual <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import io
from .calibration import (extend_to_tree, fill_z2, lev_z, lev_z2,
                          lipschitz_envelope, oriented_fill,
                          pullback_orientation, shortest_path_metric,
                          terminal_partition)
from .dimension import ScalingSeries, comb_tree, meps_series, mk_series
from .dual import minimize_dual
from .errors import InputError, MatchDualError, NotTreeLike, OddTerminals
from .matching import (Partition2, kantorovich_potential, min_matching,
                       min_matching_oracle, oriented_min_connection,
                       potential_gap)
from .metric import TOL_EXACT, TOL_GEOM, is_tree_like, restrict
from .tree import build_certificate, realize_tree

COMMANDS = ("validate", "match", "dualize", "tree", "certify", "oriented", "calib-fill",
            "calib-lev", "calib-levz", "dim-mk", "dim-eps", "comb-tree")


@dataclass(frozen=True)
class RunConfig:
    command: str
    metric: str | None = None
    points: str | None = None
    graph: str | None = None
    norm: str = "l2"
    tol: float | None = None
    seed: int = 0
    mode: str = "exact"
    format: str | None = None

    @classmethod
    def from_args(cls, args) -> RunConfig:
        cfg = cls(args.command, getattr(args, "metric", None), getattr(args, "points", None),
                  getattr(args, "graph", None), getattr(args, "norm", "l2"), args.tol,
                  args.seed, args.mode, args.format)
        if cfg.tol is not None and not cfg.tol > 0:
            raise InputError(f"--tol must be positive, got {cfg.tol}")
        return cfg


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matchdual", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, inputs=("metric", "points")):
        if "metric" in inputs:
            sp.add_argument("--metric", help="metric JSON {'n', 'd'}")
        if "points" in inputs:
            sp.add_argument("--points", help="points CSV, one point per line")
            sp.add_argument("--norm", default="l2", help="l1 | l2 | linf | lp:P")
        if "graph" in inputs:
            sp.add_argument("--graph", help="graph JSON {'vertices', 'edges', 'terminals'}")
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--mode", choices=("exact", "heuristic"), default="exact")
        sp.add_argument("--format", choices=("json", "csv"), default=None)
        return sp

    common(sub.add_parser("validate", help="check a metric")).add_argument(
        "--exact", action="store_true", help="use rational arithmetic")
    common(sub.add_parser("match", help="minimum perfect matching")).add_argument(
        "--oracle", action="store_true", help="use the subset DP instead of blossom")
    common(sub.add_parser("dualize", help="w-minimal dual metric"))
    common(sub.add_parser("tree", help="realize a tree-like metric")).add_argument(
        "--dual", action="store_true", help="dualize first")
    common(sub.add_parser("certify", help="full dual certificate"))
    sp = common(sub.add_parser("oriented", help="oriented minimal connection"))
    sp.add_argument("--partition", help="partition JSON {'plus', 'minus'}")
    sp.add_argument("--plus", help="comma-separated indices of X+")
    sp.add_argument("--minus", help="comma-separated indices of X-")
    common(sub.add_parser("calib-fill", help="minimum T-join"), ("graph",))
    sp = common(sub.add_parser("calib-lev", help="lev_Z2 of a function"), ("graph",))
    sp.add_argument("--function", help="PL function JSON {'values': {...}}; default rho o f")
    sp = common(sub.add_parser("calib-levz", help="lev_Z of a function"), ("graph",))
    sp.add_argument("--function", help="PL function JSON; default extended potential")
    sp.add_argument("--partition", help="partition JSON (overrides the graph's)")
    sp = common(sub.add_parser("dim-mk", help="m_k series"))
    sp.add_argument("--k", default="2,4", help="comma-separated even k")
    sp = common(sub.add_parser("dim-eps", help="m'_eps series"))
    sp.add_argument("--eps", default="1", help="comma-separated eps")
    sp = common(sub.add_parser("comb-tree", help="comb-tree tips and matching numbers"), ())
    sp.add_argument("--exponent", type=float, default=2.0)
    sp.add_argument("--K", type=int, default=8)
    return p


def _metric(args):
    tol = args.tol if args.tol is not None else TOL_EXACT
    if getattr(args, "metric", None):
        return io.load_metric(args.metric, tol, exact=getattr(args, "exact", False))
    if getattr(args, "points", None):
        return io.load_points_metric(args.points, args.norm)
    raise InputError("give --metric FILE or --points FILE")


def _graph(args):
    if not args.graph:
        raise InputError("give --graph FILE")
    return io.load_graph(args.graph)


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _partition(args, n):
    if args.partition:
        part = io.partition_from_json(io.read_json(args.partition))
    elif args.plus is not None and args.minus is not None:
        part = Partition2(tuple(_ints(args.plus)), tuple(_ints(args.minus)))
    else:
        half = n // 2
        part = Partition2(tuple(range(half)), tuple(range(half, n)))
    part.check(n)
    return part


def _series_out(series: ScalingSeries, fmt):
    if (fmt or "csv") == "csv":
        return series.to_csv()
    return {"rows": [dict(zip((series.param, "value", "mode", "trial", "seed"), r)) for r in series.rows]}


def _rho_f(G, tol):
    d = shortest_path_metric(G)
    cert = build_certificate(d, tol)
    f0 = {t: cert.tree.embed[i] for i, t in enumerate(G.terminals)}
    f = extend_to_tree(G, cert.tree, f0, tol)
    return pullback_orientation(G, cert.tree, f, cert.tree.embed[0])


def run_command(args) -> object:
    cmd = args.command
    tol_geom = args.tol if args.tol is not None else TOL_GEOM
    if cmd == "validate":
        M = _metric(args)
        fp = is_tree_like(M, tol_geom)
        return {"valid": True, "n": M.n, "tree_like": fp.tree_like,
                "four_point_violation": float(fp.violation),
                "quadruple": list(fp.quadruple) if fp.quadruple else None}
    if cmd == "match":
        M = _metric(args).to_float()
        res = min_matching_oracle(M) if args.oracle else min_matching(M)
        return res.to_json()
    if cmd == "dualize":
        M = _metric(args)
        res = minimize_dual(M)
        out = res.to_json()
        out["tree_like"] = is_tree_like(res.D, TOL_GEOM).tree_like
        return out
    if cmd == "tree":
        M = _metric(args).to_float()
        D = minimize_dual(M).D if args.dual else M
        fp = is_tree_like(D, tol_geom)
        if not fp:
            raise NotTreeLike(fp.quadruple, fp.violation)
        T = realize_tree(D, tol_geom)
        out = T.to_json()
        out["H1"] = T.total_length()
        return out
    if cmd == "certify":
        M = _metric(args)
        return build_certificate(M, tol_geom).to_json()
    if cmd == "oriented":
        M = _metric(args).to_float()
        part = _partition(args, M.n)
        res = oriented_min_connection(M, part)
        f = kantorovich_potential(M, part)
        return {"value": res.value, "sigma": list(res.sigma), "pairs": [list(p) for p in res.pairs],
                "partition": part.to_json(), "potential": f.tolist(), "gap": potential_gap(f, part)}
    if cmd == "calib-fill":
        G, _ = _graph(args)
        res = fill_z2(G)
        return {"mass": res.mass, "matching_value": res.matching_value,
                "chain": res.chain.to_json()["edges"], "pairs": res.matching.to_json()}
    if cmd == "calib-lev":
        G, _ = _graph(args)
        if len(G.terminals) % 2:
            raise OddTerminals(f"{len(G.terminals)} terminals")
        if args.function:
            phi = io.function_from_json(io.read_json(args.function), G)
            H, source = G, "given"
        else:
            H, phi = _rho_f(G, tol_geom)
            source = "rho_f"
        return {"lev": lev_z2(H, phi), "fill": fill_z2(G).mass, "function": source}
    if cmd == "calib-levz":
        G, part = _graph(args)
        if args.partition:
            part = io.partition_from_json(io.read_json(args.partition))
        if part is None:
            half = len(G.terminals) // 2
            part = Partition2(G.terminals[:half], G.terminals[half:])
        if args.function:
            phi = io.function_from_json(io.read_json(args.function), G)
            source = "given"
        else:
            tp = terminal_partition(G, part)
            f = kantorovich_potential(shortest_path_metric(G), tp)
            phi = lipschitz_envelope(G, {t: float(f[i]) for i, t in enumerate(G.terminals)})
            source = "potential"
        return {"lev_z": lev_z(G, phi, part), "M": oriented_fill(G, part), "function": source}
    if cmd in ("dim-mk", "dim-eps"):
        M = _metric(args).to_float()
        mode = "exhaustive" if args.mode == "exact" else "greedy"
        if cmd == "dim-mk":
            series = mk_series(M, _ints(args.k), mode, args.seed)
        else:
            series = meps_series(M, [float(x) for x in args.eps.split(",")], mode, args.seed)
        return _series_out(series, args.format)
    if cmd == "comb-tree":
        tree, tips = comb_tree(args.exponent, args.K)
        series = ScalingSeries()
        for k in range(1, args.K + 1):
            series.add(k, min_matching(restrict(tips, range(2 * k))).value, "exact", 0, args.seed)
        if (args.format or "csv") == "csv":
            return series.to_csv()
        out = _series_out(series, "json")
        out["legs"] = list(tree.legs)
        out["tree"] = tree.as_tree().to_json()
        return out
    raise InputError(f"unknown command {cmd!r}")


def _error(exc: MatchDualError | Exception, kind: str | None = None) -> str:
    return io.dumps({"error": {"kind": kind or exc.kind, "detail": str(exc)}})


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        RunConfig.from_args(args)
        out = run_command(args)
    except MatchDualError as exc:
        print(_error(exc))
        return exc.exit_code
    except FileNotFoundError as exc:
        print(_error(exc, "FileNotFound"))
        return 2
    except json.JSONDecodeError as exc:
        print(_error(exc, "MalformedJSON"))
        return 2
    if isinstance(out, str):
        sys.stdout.write(out)
    else:
        print(io.dumps(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
