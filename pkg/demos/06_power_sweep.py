# Run the bundled smoke preset end to end and print what it wrote.
#
# The same run drives the command line as `paslab sweep --config
# src/paslab/presets/smoke_desk.yaml`; here the run functions are used
# directly and the output lands under runs/smoke_desk/.

import csv
import os

from paslab.experiments import ExperimentSpec, run_power_sweep

preset = os.path.join(
    os.path.dirname(__file__), "..", "src", "paslab", "presets", "smoke_desk.yaml"
)
spec = ExperimentSpec.from_yaml(preset)
run_power_sweep(spec)
outdir = spec.resolved_outdir()
print(f"outputs in {outdir}:")
for name in sorted(os.listdir(outdir)):
    print(" ", name)

print()
with open(os.path.join(outdir, "sweep.csv")) as fh:
    for row in csv.reader(fh):
        print("  " + "  ".join(f"{cell:>16s}" for cell in row))
