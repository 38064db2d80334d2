"""Four-way partition of the Western US power grid.

Accepts a plain edge list (0- or 1-based ids, detected from the minimum id) or a
GML file with ``source``/``target`` edge keys, and reports the cut for
target sizes 898, 1066, 1240, 1737.

    python3 scripts/power_grid.py power.gml --restarts 50
"""

import argparse
import re
import sys

import numpy as np

from simplexpart.graph import Graph
from simplexpart.partitioner import solve
from simplexpart.simplex import PartitionSpec

SIZES = (898, 1066, 1240, 1737)


def read_pairs(path):
    text = open(path).read()
    if "source" in text and "target" in text:
        src = re.findall(r"source\s+(\d+)", text)
        tgt = re.findall(r"target\s+(\d+)", text)
        pairs = np.array([src, tgt], dtype=np.int64).T
    else:
        rows = [ln.split()[:2] for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith(("#", "%"))]
        pairs = np.array(rows, dtype=np.int64)
    return pairs - pairs.min()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("path")
    ap.add_argument("--restarts", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--write-edge-list", help="also save the graph as a 0-based edge list")
    args = ap.parse_args(argv)

    pairs = read_pairs(args.path)
    pairs = np.unique(np.sort(pairs[pairs[:, 0] != pairs[:, 1]], axis=1), axis=0)
    g = Graph.from_edges(int(pairs.max()) + 1, pairs[:, 0], pairs[:, 1])
    print(f"n={g.n} m={g.m}")
    if g.n != sum(SIZES):
        sys.exit(f"expected {sum(SIZES)} vertices, found {g.n}")
    if args.write_edge_list:
        from simplexpart.graph import write_edge_list

        with open(args.write_edge_list, "w") as fh:
            write_edge_list(g, fh)
    rep = solve(g, PartitionSpec(SIZES), restarts=args.restarts, seed=args.seed)
    print(rep.summary())
    print("restart cuts:", " ".join(f"{c:g}" for c in rep.restart_cuts))


if __name__ == "__main__":
    main()
