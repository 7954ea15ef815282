"""Jump-and-Return versus 1-3-3-1 selective 90 degree rotations near the design offset."""

import argparse
from pathlib import Path

from jumpreturn import analysis


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gmin", type=float, default=0.8)
    ap.add_argument("--gmax", type=float, default=1.2)
    ap.add_argument("--steps", type=int, default=41)
    ap.add_argument("--out", default="results/compare_1331.csv")
    args = ap.parse_args()

    report = analysis.compare_1331(analysis.linear_grid(args.gmin, args.gmax, args.steps))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(report.to_csv())

    print("    g     JR pair   1331 pair")
    for g, j, b in zip(report.grid, report.columns["jr_pair"], report.columns["b1331_pair"]):
        print(f"{g:6.3f}  {j:9.6f}  {b:9.6f}")
    m = report.meta
    print(f"delay angle: JR {m['jr_delay_angle']:.4f} rad, binomial core "
          f"{m['b1331_binomial_delay_angle']:.4f} rad, full 1331 selective {m['b1331_total_delay_angle']:.4f} rad")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
