"""Where the simplex rounding puts vertices when group sizes are very uneven.

Prints found group sizes, accuracy and cut with and without exact-size
balancing, plus k-means, across a few in-group fractions.
"""

import argparse

import numpy as np

from simplexpart.baseline import KMeansConfig, kmeans_partition
from simplexpart.partitioner import balance, solve
from simplexpart.simplex import PartitionSpec
from simplexpart.synth import PlantedSpec, accuracy, chance_baseline, generate, replicate_seed


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="800,300,100")
    ap.add_argument("--mean-degree", "-c", type=float, default=20.0)
    ap.add_argument("--f-values", default="0.55,0.7,0.85,0.95")
    ap.add_argument("--replicates", type=int, default=5)
    args = ap.parse_args(argv)

    sizes = tuple(int(s) for s in args.sizes.split(","))
    k = len(sizes)
    spec = PartitionSpec(sizes)
    print(f"chance={chance_baseline(sizes):.4f} all-in-largest={max(sizes) / sum(sizes):.4f}")
    for fi, f in enumerate(float(x) for x in args.f_values.split(",")):
        acc = {"simplex": [], "balanced": [], "kmeans": []}
        found = []
        for rep in range(args.replicates):
            s = replicate_seed(0, fi, rep)
            g, planted = generate(PlantedSpec(sizes, args.mean_degree, f, seed=s))
            p = solve(g, spec, seed=s).partition
            found.append(p.sizes)
            acc["simplex"].append(accuracy(p, planted, k))
            acc["balanced"].append(accuracy(balance(g, p, spec), planted, k))
            acc["kmeans"].append(accuracy(kmeans_partition(g, KMeansConfig(k, seed=s)), planted, k))
        means = " ".join(f"{m}={np.mean(v):.4f}" for m, v in acc.items())
        print(f"f={f:.2f} {means} simplex sizes e.g. {list(found[0])}")


if __name__ == "__main__":
    main()
