"""Command-line entry points: gen, bench, load, serve."""

from __future__ import annotations

import argparse
import json
import os
import sys


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hubgraph")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic graph")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--degree", type=float, default=4.0)
    gen.add_argument("--cardinality", type=int, default=16)
    gen.add_argument("--cycles", type=float, default=0.0,
                     help="fraction of edges placed against the topological order")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output directory")

    bench = sub.add_parser("bench", help="run a benchmark grid")
    bench.add_argument("--grid", required=True, help="TOML grid file")
    bench.add_argument("--out", required=True, help="report directory")

    load = sub.add_parser("load", help="validate a vertex/edge file pair")
    load.add_argument("--vertices", required=True)
    load.add_argument("--edges", required=True)
    load.add_argument("--delimiter", default="\t")

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--manifest", default=None,
                       help="JSON list of {name, vertices, edges}")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return p


def _cmd_gen(args) -> int:
    from .generate import GenConfig, generate
    g = generate(GenConfig(n=args.n, degree=args.degree,
                           cardinality=args.cardinality,
                           cycle_fraction=args.cycles, seed=args.seed))
    os.makedirs(args.out, exist_ok=True)
    vp = os.path.join(args.out, "vertices.tsv")
    ep = os.path.join(args.out, "edges.tsv")
    g.save(vp, ep)
    print(f"wrote {g.n_vertices} vertices to {vp}")
    print(f"wrote {g.n_edges} edges to {ep}")
    return 0


def _cmd_bench(args) -> int:
    from .bench import load_grid_file, run_grid
    grid = load_grid_file(args.grid)
    cells = run_grid(grid, out_dir=args.out)
    failed = [c for c in cells if "error" in c]
    for c in cells:
        if "error" in c:
            print(f"n={c['n']} degree={c['degree']} C={c['cardinality']} "
                  f"SV={c['sv']}: ERROR {c['error']}")
        else:
            print(f"n={c['n']} degree={c['degree']} C={c['cardinality']} "
                  f"SV={c['sv']}: savings {c['savings']:.1%}")
    print(f"report written to {args.out}")
    return 1 if failed else 0


def _cmd_load(args) -> int:
    from .graph import GraphLoadError, load_graph
    try:
        g = load_graph(args.vertices, args.edges, args.delimiter)
    except GraphLoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"loaded {g.n_vertices} vertices, {g.n_edges} edges")
    return 0


def _default_manifest() -> list[dict]:
    import tempfile
    from .datasets import write_social_sample
    directory = os.path.join(tempfile.gettempdir(), "hubgraph_social")
    vp, ep = write_social_sample(directory)
    return [{"name": "social", "vertices": vp, "edges": ep}]


def _cmd_serve(args) -> int:
    from .service import serve
    if args.manifest:
        with open(args.manifest) as f:
            manifest = json.load(f)
    else:
        manifest = _default_manifest()
    serve(manifest, host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"gen": _cmd_gen, "bench": _cmd_bench,
               "load": _cmd_load, "serve": _cmd_serve}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
