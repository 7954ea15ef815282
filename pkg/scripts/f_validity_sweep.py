"""Corrected against uncorrected constructions over the off-resonance fraction f."""

import argparse
import math
from pathlib import Path

from jumpreturn import analysis, compiler as c

GATES = {
    "pulse90": c.CorrectedPulse(math.pi / 2),
    "pulse60": c.CorrectedPulse(math.pi / 3),
    "double45": c.CorrectedDouble(math.pi / 4),
    "inversion": c.Corrected180(0.0),
    "selective90": c.CorrectedSelective90(c.Target.I),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fmax", type=float, default=2.5)
    ap.add_argument("--steps", type=int, default=51)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()

    grid = analysis.linear_grid(0.0, args.fmax, args.steps)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, spec in GATES.items():
        report = analysis.sweep_f(spec, grid)
        (outdir / f"f_sweep_{name}.csv").write_text(report.to_csv())
        ok = [f for f, s in zip(grid, report.columns["status"]) if s == "ok"]
        print(f"{name:12s} corrected form exists up to f = {max(ok):.3f}")


if __name__ == "__main__":
    main()
