"""Matching numbers of well-spread point sets in [0,1]^dim and the fitted exponent.

    python3 scripts/run_scaling.py --dims 2 3 --ks 32 64 128 256 --trials 10 --out results/
"""

import argparse
from pathlib import Path

from matchdual.dimension import ScalingSeries, cube_experiment, fit_dimension


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--ks", type=int, nargs="+", default=[32, 64, 128, 256])
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=12)
    ap.add_argument("--methods", nargs="+", default=["fps", "grid"], choices=["fps", "grid"])
    ap.add_argument("--out", type=Path, default=None, help="directory for per-dimension CSV files")
    args = ap.parse_args()

    print(f"{'dim':>3} {'method':>6} {'slope':>7} {'95% CI':>17} {'n_hat':>6} {'theory':>7}")
    for dim in args.dims:
        series = cube_experiment(dim, args.ks, args.trials, args.seed, methods=args.methods)
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"cube_dim{dim}.csv").write_text(series.to_csv())
        for method in args.methods:
            sub = ScalingSeries([r for r in series.rows if r.mode == f"heuristic-{method}"])
            fit = fit_dimension(sub)
            lo, hi = fit.slope_ci
            print(f"{dim:>3} {method:>6} {fit.slope:7.3f} [{lo:6.3f}, {hi:6.3f}] {fit.n_hat:6.2f} "
                  f"{(dim - 1) / dim:7.3f}")


if __name__ == "__main__":
    main()
