"""Compare lev, fill and the matching number on random metric graphs.

On tree graphs the pulled-back orientation attains the fill; on graphs with
cycles the two can separate (the unit 6-cycle is the standard case).
"""

import argparse
import csv
import sys

import numpy as np

from matchdual.calibration import (MetricGraph, extend_to_tree, fill_z2, lev_z2,
                                   pullback_orientation, random_lipschitz,
                                   shortest_path_metric)
from matchdual.instances import random_connected_graph, random_tree_graph
from matchdual.tree import build_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--vertices", type=int, default=14)
    ap.add_argument("--terminals", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--random-functions", type=int, default=20)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["idx", "shape", "vertices", "terminals", "fill", "lev_rho_f", "best_random_lev"])
    for idx in range(args.count):
        shape = "tree" if idx % 2 == 0 else "cyclic"
        nv = int(rng.integers(args.terminals, args.vertices + 1))
        V, E = random_tree_graph(nv, rng) if shape == "tree" else random_connected_graph(nv, rng)
        k = min(args.terminals, nv - nv % 2)
        G = MetricGraph(V, E, sorted(int(x) for x in rng.choice(nv, size=k, replace=False)))
        cert = build_certificate(shortest_path_metric(G))
        f0 = {t: cert.tree.embed[i] for i, t in enumerate(G.terminals)}
        f = extend_to_tree(G, cert.tree, f0)
        H, phi = pullback_orientation(G, cert.tree, f, cert.tree.embed[0])
        best = max(lev_z2(G, random_lipschitz(G, rng)) for _ in range(args.random_functions))
        out.writerow([idx, shape, nv, k, f"{fill_z2(G).mass:.10g}", f"{lev_z2(H, phi):.10g}", f"{best:.10g}"])


if __name__ == "__main__":
    main()
