"""A small benchmark sweep, written out as the two CSV files.

The full-size sweeps (100 samples per point, sizes up to 127) reproduce the
depth / two-qubit-gate / measurement trade-offs between the protocols; this
demo runs a reduced version in a few seconds. Identical configs reproduce
the CSVs byte for byte, regardless of worker count.
"""

import tempfile
from pathlib import Path

from ghz_synth import ProtocolSpec, SweepConfig, run_sweep
from ghz_synth.bench import aggregate_csv, write_outputs
from ghz_synth.merging import HighestDegree, ScalingFactor

cfg = SweepConfig(
    family="eagle_subgraph",
    sizes=(10, 25, 50),
    protocols=(
        ProtocolSpec("growing"),
        ProtocolSpec("merging", HighestDegree()),
        ProtocolSpec("merging", ScalingFactor(0.7)),
    ),
    samples=25,
    seed=2024,
)

records = run_sweep(cfg, workers=2)
print(f"{len(records)} records")

out_dir = Path(tempfile.mkdtemp(prefix="ghz_bench_"))
raw_path, agg_path = write_outputs(records, str(out_dir))
print("wrote", raw_path, "and", agg_path)

print("\naggregate rows (mean/std/max per figure of merit):")
for line in aggregate_csv(records).splitlines():
    cols = line.split(",")
    if cols[4:5] == ["depth"] or cols[0] == "family":
        print("  " + ",".join(cols[:8]))

# Mean depth: the measurement-based route flattens out while the unitary
# route keeps climbing with size.
by_point = {}
for r in records:
    by_point.setdefault((r.protocol, r.strategy, r.n), []).append(r.depth)
print("\nmean depth by size:")
for (proto, strat, n), ds in sorted(by_point.items()):
    label = f"{proto}" + (f"[{strat}]" if strat else "")
    print(f"  {label:30} N={n:>3}: {sum(ds)/len(ds):6.2f}")
