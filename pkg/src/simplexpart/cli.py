"""Command-line interface: ``simplexpart {partition,bisect,gen-sbm,bench}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .eigen import DEFAULT_TOL, EigenConvergenceError
from .graph import GraphError, connected, read_edge_list, write_edge_list
from .partitioner import DEFAULT_RESTARTS, bisect, solve
from .simplex import PartitionSpec, SpecError
from .synth import (
    METHODS,
    InfeasibleSpecError,
    PlantedSpec,
    generate,
    sweep,
    write_csv,
)

DEFAULT_F_GRID = (0.34,) + tuple(round(0.40 + 0.05 * i, 2) for i in range(11))
EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; this CLI reserves 2 for numerical failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def resolve_spec(n: int, k: int | None, sizes: str | None) -> PartitionSpec:
    """Target sizes from ``--k`` and ``--sizes`` (a comma list or ``equal``)."""
    if sizes and sizes != "equal":
        spec = PartitionSpec(_int_list(sizes))
        if k is not None and k != spec.k:
            raise UsageError(f"--k {k} disagrees with {spec.k} sizes")
        if spec.k > n:
            raise UsageError("k exceeds vertex count")
        if spec.n != n:
            raise UsageError(f"sizes sum to {spec.n}, graph has {n} vertices")
        return spec
    if k is None:
        raise UsageError("--k is required when --sizes is not a list")
    if k > n:
        raise UsageError("k exceeds vertex count")
    return PartitionSpec.equal(n, k)


def _load(path: str):
    g = read_edge_list(path)
    if not connected(g):
        raise UsageError("graph is not connected")
    return g


def _emit_json(obj: dict, output: str | None) -> None:
    text = json.dumps(obj, indent=None) + "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_partition(args) -> int:
    g = _load(args.input)
    spec = resolve_spec(g.n, args.k, args.sizes)
    report = solve(g, spec, restarts=args.restarts, seed=args.seed, tol=args.tol, balanced=args.balance)
    out = report.partition.to_dict()
    out["relaxed_cost"] = report.relaxed_cost
    out["restart_cuts"] = report.restart_cuts
    out["chosen_restart"] = report.chosen_restart
    _emit_json(out, args.output)
    print(report.summary(), file=sys.stdout if args.output else sys.stderr)
    return EXIT_OK


def cmd_bisect(args) -> int:
    g = _load(args.input)
    if g.n < 2:
        raise UsageError("k exceeds vertex count")
    p = bisect(g, tol=args.tol, seed=args.seed)
    _emit_json(p.to_dict(), args.output)
    sizes = ",".join(map(str, p.sizes))
    print(f"cut={p.cut:g} sizes=[{sizes}] restarts=1", file=sys.stdout if args.output else sys.stderr)
    return EXIT_OK


def cmd_gen_sbm(args) -> int:
    spec = PlantedSpec(args.sizes, args.mean_degree, args.f, args.seed)
    g, labels = generate(spec)
    out = Path(args.output)
    with out.open("w", encoding="utf-8") as fh:
        write_edge_list(g, fh)
    p_in, p_out = spec.probabilities
    sidecar = {
        "sizes": list(spec.sizes),
        "mean_degree": spec.mean_degree,
        "in_fraction": spec.in_fraction,
        "seed": spec.seed,
        "p_in": p_in,
        "p_out": p_out,
        "n": g.n,
        "edges": g.m,
        "realized_mean_degree": float(g.degrees.mean()),
        "realized_in_fraction": float(np.mean(labels[g.u] == labels[g.v])) if g.m else 0.0,
        "labels": labels.tolist(),
    }
    side = out.with_name(out.name + ".json")
    side.write_text(json.dumps(sidecar) + "\n", encoding="utf-8")
    print(f"wrote {out} ({g.n} vertices, {g.m} edges) and {side}")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.replicates < 1:
        raise UsageError("--replicates must be at least 1")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise UsageError(f"unknown method(s): {', '.join(unknown)}")
    f_values = args.f_values or DEFAULT_F_GRID
    base = PlantedSpec(args.sizes, args.mean_degree, f_values[0], args.seed)
    for f in f_values:
        p_in, p_out = PlantedSpec(args.sizes, args.mean_degree, f).probabilities
        if not (0 <= p_in <= 1 and 0 <= p_out <= 1):
            raise InfeasibleSpecError(f"infeasible density at f={f:g}: p_in={p_in:.4g}, p_out={p_out:.4g}")
    rows = sweep(base, f_values, args.replicates, methods, restarts=args.restarts,
                 progress=lambda s: print(s, file=sys.stderr, flush=True))
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simplexpart", description="Multiway spectral graph partitioning.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--input", "-i", required=True, help="edge-list file")
        p.add_argument("--output", "-o", help="output path (default: stdout)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="eigensolver residual tolerance")

    p = sub.add_parser("partition", help="partition an edge-list graph into k groups")
    common(p)
    p.add_argument("--k", type=int)
    p.add_argument("--sizes", default="equal", help="comma-separated target sizes, or 'equal'")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--balance", action="store_true", help="force the exact target sizes")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("bisect", help="Fiedler-vector sign bisection")
    common(p)
    p.set_defaults(func=cmd_bisect)

    p = sub.add_parser("gen-sbm", help="generate a planted-partition graph")
    p.add_argument("--output", "-o", required=True, help="edge-list path; labels go to <output>.json")
    p.add_argument("--sizes", type=_int_list, required=True)
    p.add_argument("--mean-degree", "-c", type=float, default=20.0)
    p.add_argument("--f", "--in-fraction", dest="f", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen_sbm)

    p = sub.add_parser("bench", help="accuracy sweep over in-group edge fractions")
    p.add_argument("--output", "-o", help="CSV path (default: stdout)")
    p.add_argument("--sizes", type=_int_list, default=(400, 400, 400))
    p.add_argument("--mean-degree", "-c", type=float, default=20.0)
    p.add_argument("--f-values", type=_float_list, default=None,
                   help="comma-separated in-group fractions (default 0.34,0.40,...,0.90)")
    p.add_argument("--replicates", type=int, default=20)
    p.add_argument("--methods", default="simplex,kmeans")
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (EigenConvergenceError, np.linalg.LinAlgError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, GraphError, SpecError, InfeasibleSpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
