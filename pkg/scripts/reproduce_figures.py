"""Write the data behind all four figures as CSV (plus gnuplot scripts).

    python3 scripts/reproduce_figures.py --outdir results/figures
"""

import argparse
import math
from pathlib import Path

from weakinterference import analytics
from weakinterference.cli import DEFAULT_POINTS, figure_table, plot_script


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="results/figures")
    parser.add_argument("--points", type=int, default=DEFAULT_POINTS)
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for n in (1, 2, 3, 4):
        table = figure_table(n, points=args.points)
        path = outdir / f"figure{n}.csv"
        path.write_text(table.render("csv"), encoding="utf-8")
        path.with_suffix(".gp").write_text(plot_script(table, path.name, "csv"), encoding="utf-8")
        print(f"wrote {path} ({len(table.rows)} rows)")

    # headline numbers of the Fig. 1/2 scenario
    g = float(analytics.curve_gamma(20e-9, 10e-6))
    opt = analytics.optimal_angle(g, math.radians(0.01))
    p = float(analytics.curve_power_ratio(-math.pi / 4, math.radians(0.01), analytics.separation_exponent(20e-9, 10e-6)))
    print(f"gamma = {g:.12f}")
    print(f"alpha0 = {math.degrees(opt.alpha0):.6f} deg, max amplification = {opt.a_max:.4f}")
    print(f"power ratio at -45 deg = {p:.6e} ({analytics.loss_db(p):.3f} dB)")


if __name__ == "__main__":
    main()
