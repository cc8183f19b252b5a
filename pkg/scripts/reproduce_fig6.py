"""RLC analog: source power with the pump mesh open and closed.

For each coupling capacitor prints the open-switch resonance against the
nominal value, and the closed-switch doublet: splitting over the bare
linewidth R2/L2 tells whether the dip is a transparency window (< 1) or
a resolved Autler-Townes pair (> 1).
"""

import argparse
import math
import os

from classical_eit.config import FIG6_COUPLING, FIG6_GRID, FIG6_NOMINAL_KHZ, fig6_params
from classical_eit.csvio import emit_gnuplot, write_csv
from classical_eit.spectrum import Observable, find_extrema, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/fig6")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    print(f"{'tag':4s} {'C [uF]':>7s} {'f_open':>8s} {'nominal':>7s} {'dev':>6s} "
          f"{'f-':>8s} {'f+':>8s} {'depth':>7s} {'split/width':>11s}")
    for tag, C in FIG6_COUPLING.items():
        for closed in (False, True):
            c = fig6_params(C, switch_closed=closed)
            obs = Observable.CIRCUIT_POWER_CLOSED if closed else Observable.CIRCUIT_POWER_OPEN
            csv_path = os.path.join(args.out, f"fig6{tag}_{obs.value}.csv")
            write_csv(sweep(c, FIG6_GRID, obs), csv_path)
            emit_gnuplot(csv_path, csv_path[:-4] + ".gp", obs, "electrical",
                         title=f"C = {C * 1e6:.3f} uF")

        c = fig6_params(C)
        f_open = 1 / (2 * math.pi * math.sqrt(c.L2 * c.c_e2)) / 1e3
        nominal = FIG6_NOMINAL_KHZ[tag]
        closed = find_extrema(sweep(c, FIG6_GRID, Observable.CIRCUIT_POWER_CLOSED))
        (w_lo, _), (w_hi, _) = closed.maxima[0], closed.maxima[-1]
        ratio = closed.splitting / (c.R2 / c.L2)
        print(f"{tag:4s} {C * 1e6:7.3f} {f_open:8.2f} {nominal:7.1f} "
              f"{100 * (f_open - nominal) / nominal:+5.1f}% "
              f"{w_lo / 2e3 / math.pi:8.2f} {w_hi / 2e3 / math.pi:8.2f} "
              f"{closed.dip.depth_ratio:7.4f} {ratio:11.3f}")
    print(f"\nwrote CSV and gnuplot files to {os.path.abspath(args.out)}")


if __name__ == "__main__":
    main()
