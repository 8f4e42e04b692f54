"""
Measuring the sharing advantage across a parameter grid
=======================================================

How much does the sharing planner save as the number of hubs (SV), the
group-by key cardinality (C), and the edge density change?  This sweep
runs the benchmark query over a small grid and prints the add-operation
counts side by side.  The full desk-scale grid lives behind
`hubgraph bench --grid grid.toml --out report/`.
"""

from hubgraph.bench import ExperimentGrid, run_grid

grid = ExperimentGrid(
    n=[2000],
    degree=[4, 16],          # sparse and dense variants
    cardinality=[10, 1000],  # few vs many distinct group-by keys
    sv=[5, 15],              # hub count: more hubs -> more shared overlap
    repetitions=1,
)

print(f"running {len(grid.degree) * len(grid.cardinality) * len(grid.sv)} "
      f"cells at n={grid.n[0]} ...\n")
cells = run_grid(grid)

header = f"{'degree':>6} {'C':>6} {'SV':>4} {'SN adds':>10} {'AS adds':>10} " \
         f"{'saved':>7} {'time':>7}"
print(header)
print("-" * len(header))
for c in cells:
    if "error" in c:
        print(f"{c['degree']:>6} {c['cardinality']:>6} {c['sv']:>4}  "
              f"ERROR {c['error']}")
        continue
    print(f"{c['degree']:>6} {c['cardinality']:>6} {c['sv']:>4} "
          f"{c['sn_add_ops']:>10} {c['as_add_ops']:>10} "
          f"{c['savings']:>6.1%} {c['as_time_s']:>6.2f}s")

# the two headline trends: savings grow with hub count (more overlap to
# share) and shrink with key cardinality (bigger tables dilute each merge)
by = {(c["degree"], c["cardinality"], c["sv"]): c["savings"] for c in cells
      if "error" not in c}
print(f"\nmore hubs help:  C=10, degree=16: "
      f"SV 5 -> {by[(16, 10, 5)]:.1%}, SV 15 -> {by[(16, 10, 15)]:.1%}")
print(f"more keys hurt:  SV=15, degree=16: "
      f"C 10 -> {by[(16, 10, 15)]:.1%}, C 1000 -> {by[(16, 1000, 15)]:.1%}")
