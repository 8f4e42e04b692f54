"""Benchmark harness: shared-nothing vs sharing add-operation counts and timings."""

from __future__ import annotations

import csv
import os
import time
from dataclasses import dataclass, field

from . import aggregate as agg
from .generate import GenConfig, generate
from .query import Call, Catalog, GEQuery, execute


@dataclass
class ExperimentGrid:
    """Cross product of generator knobs; every cell runs the benchmark query."""

    sv: list = field(default_factory=lambda: [5])
    cardinality: list = field(default_factory=lambda: [100])
    degree: list = field(default_factory=lambda: [8])
    n: list = field(default_factory=lambda: [1000])
    repetitions: int = 3
    seed: int = 7
    cycle_fraction: float = 0.05
    measure_sn_time: bool = False

    def __post_init__(self):
        if not (self.sv and self.cardinality and self.degree and self.n):
            raise ValueError("grid axes must be non-empty")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


def benchmark_functions(cardinality: int):
    """The two measure-by-(v_grp, e_grp) sums, with dense integer keys."""
    import math
    c_v = max(1, math.isqrt(cardinality))
    c_e = max(1, -(-cardinality // c_v))
    def key(root, e):
        return root.v_grp[root.e_src[e]] * c_e + root.e_grp[e]
    return [
        agg.AggFunction("SumVMrByVGrpEGrp", "edge", "sum", measure="v_mr",
                        key_fn=key, key_domain=c_v * c_e),
        agg.AggFunction("SumEMrByVGrpEGrp", "edge", "sum", measure="e_mr",
                        key_fn=key, key_domain=c_v * c_e),
    ]


def benchmark_query(sv: int) -> GEQuery:
    return GEQuery(
        select=Call("TopMaxDegreeVertices", [sv]),
        source="G",
        alias=None,
        group_by=Call("betweenness", []),
        summarize=[Call("SumVMrByVGrpEGrp", []), Call("SumEMrByVGrpEGrp", [])],
    )


def sn_op_count(element_pairs, tables) -> int:
    """Closed form: one add per table row per destination subgraph."""
    return sum(len(t) * ps.bit_count() for ps, t in zip(element_pairs, tables))


def run_cell(n: int, degree: int, cardinality: int, sv: int, *,
             seed: int = 7, cycle_fraction: float = 0.05, repetitions: int = 3,
             measure_sn_time: bool = False) -> dict:
    """One benchmark cell; the first (warm-up) run is excluded from averages."""
    graph = generate(GenConfig(n=n, degree=degree, cardinality=cardinality,
                               cycle_fraction=cycle_fraction, seed=seed))
    catalog = Catalog()
    catalog.register_dataset("G", graph)
    fns = benchmark_functions(cardinality)
    for fn in fns:
        catalog.tau_overrides[fn.name] = fn
    query = benchmark_query(sv)

    runs = []
    as_ops = None
    for rep in range(repetitions + 1):
        h = execute(query, catalog, dataset_name="G")
        ops = sum(c.total for c in h.ctx["op_counts"].values())
        if as_ops is None:
            as_ops = ops
        elif ops != as_ops:
            raise AssertionError("add-op count is not deterministic across runs")
        if rep > 0:
            runs.append(h.phase_times)
        last = h

    inputs = last.ctx["agg_inputs"]
    sn_ops = 0
    for kind in ("vertex", "edge"):
        pairs, tables_by_fn, kind_fns = inputs[kind]
        for fn in kind_fns:
            sn_ops += sn_op_count(pairs, tables_by_fn[fn.name])

    sn_time = None
    if measure_sn_time:
        t0 = time.perf_counter()
        for kind in ("vertex", "edge"):
            pairs, tables_by_fn, kind_fns = inputs[kind]
            if kind_fns:
                agg.sn_aggregate(pairs, tables_by_fn, kind_fns, len(last.hubs))
        sn_time = time.perf_counter() - t0

    mean = lambda key: sum(r[key] for r in runs) / len(runs)
    savings = 1.0 - as_ops / sn_ops if sn_ops else 0.0
    return {
        "n": n, "degree": degree, "cardinality": cardinality, "sv": sv,
        "sn_add_ops": sn_ops, "as_add_ops": as_ops, "savings": savings,
        "sn_time_s": sn_time, "as_time_s": mean("total"),
        "tag_s": mean("tag"), "sgext_s": mean("sgext"),
        "plan_s": mean("plan"), "agg_s": mean("agg"),
    }


def run_grid(grid: ExperimentGrid, out_dir=None) -> list[dict]:
    """Run every cell; failures are recorded and the grid continues.

    When out_dir is given, emits results.csv, phases.csv, and one C-by-SV
    markdown table per degree (labeled by the actual degree value).
    """
    cells = []
    for n in grid.n:
        for degree in grid.degree:
            for cardinality in grid.cardinality:
                for sv in grid.sv:
                    try:
                        cells.append(run_cell(
                            n, degree, cardinality, sv,
                            seed=grid.seed, cycle_fraction=grid.cycle_fraction,
                            repetitions=grid.repetitions,
                            measure_sn_time=grid.measure_sn_time))
                    except Exception as exc:  # noqa: BLE001 - keep the grid going
                        cells.append({"n": n, "degree": degree,
                                      "cardinality": cardinality, "sv": sv,
                                      "error": str(exc)})
    if out_dir is not None:
        write_report(cells, grid, out_dir)
    return cells


def write_report(cells: list[dict], grid: ExperimentGrid, out_dir) -> None:
    os.makedirs(out_dir, exist_ok=True)
    ok = [c for c in cells if "error" not in c]
    fields = ["n", "degree", "cardinality", "sv", "sn_add_ops", "as_add_ops",
              "savings", "sn_time_s", "as_time_s", "tag_s", "sgext_s",
              "plan_s", "agg_s", "error"]
    with open(os.path.join(out_dir, "results.csv"), "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=fields)
        w.writeheader()
        for c in cells:
            w.writerow({k: c.get(k, "") for k in fields})
    with open(os.path.join(out_dir, "phases.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["n", "degree", "cardinality", "sv",
                    "tag_s", "sgext_s", "plan_s", "agg_s", "total_s"])
        for c in ok:
            w.writerow([c["n"], c["degree"], c["cardinality"], c["sv"],
                        c["tag_s"], c["sgext_s"], c["plan_s"], c["agg_s"],
                        c["as_time_s"]])
    degrees = sorted({c["degree"] for c in ok})
    names = {}
    if degrees:
        names[max(degrees)] = "table_dense.md"
        names[min(degrees)] = "table_sparse.md"
    for degree in degrees:
        name = names.get(degree, f"table_degree{degree}.md")
        _write_table(ok, degree, os.path.join(out_dir, name))


def _write_table(cells, degree, path):
    rows = [c for c in cells if c["degree"] == degree]
    svs = sorted({c["sv"] for c in rows})
    cs = sorted({c["cardinality"] for c in rows})
    lookup = {(c["cardinality"], c["sv"]): c for c in rows}
    with open(path, "w") as f:
        f.write(f"# Add operations, degree {degree} (SN / AS)\n\n")
        f.write("| C \\ SV | " + " | ".join(str(s) for s in svs) + " |\n")
        f.write("|---" * (len(svs) + 1) + "|\n")
        for cardinality in cs:
            vals = []
            for sv in svs:
                c = lookup.get((cardinality, sv))
                vals.append(f"{c['sn_add_ops']} / {c['as_add_ops']}" if c else "-")
            f.write(f"| {cardinality} | " + " | ".join(vals) + " |\n")


def load_grid_file(path) -> ExperimentGrid:
    """Read a grid description from a TOML file (section [grid] or top level)."""
    import tomli
    with open(path, "rb") as f:
        data = tomli.load(f)
    data = data.get("grid", data)
    return ExperimentGrid(
        sv=list(data.get("sv", [5])),
        cardinality=list(data.get("cardinality", [100])),
        degree=list(data.get("degree", [8])),
        n=list(data.get("n", [1000])),
        repetitions=int(data.get("repetitions", 3)),
        seed=int(data.get("seed", 7)),
        cycle_fraction=float(data.get("cycle_fraction", 0.05)),
        measure_sn_time=bool(data.get("measure_sn_time", False)),
    )
