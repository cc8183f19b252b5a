"""RK4 oracle against the closed-form amplitude.

Part 1: error of the demodulated amplitude as the step is halved (expect
ratios near 16).  Part 2: worst relative error over a detuning sweep for a
few couplings.
"""

import argparse
import time

import numpy as np

from classical_eit.config import fig3_params
from classical_eit.response import probe_amplitude
from classical_eit.timedomain import demodulated_response, settling_time


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega", type=float, default=2.05)
    ap.add_argument("--points", type=int, default=21)
    ap.add_argument("--steps-per-period", type=int, default=1536)
    args = ap.parse_args()

    p = fig3_params(0.0)
    exact = probe_amplitude(p, args.omega)
    prev = None
    print("steps/period   |error|        ratio")
    for spp in (64, 128, 256, 512, 1024):
        err = abs(demodulated_response(p, [args.omega], spp, settle_tol=1e-14)[0] - exact)
        ratio = f"{prev / err:8.2f}" if prev else "       -"
        print(f"{spp:12d}   {err:.4e}  {ratio}")
        prev = err

    omegas = 2.0 + np.linspace(-0.5, 0.5, args.points)
    print(f"\n{args.points} points, {args.steps_per_period} steps/period")
    print("Omega_r  settle time  max rel err   seconds")
    for omega_r in (0.0, 0.1, 0.5):
        q = fig3_params(omega_r)
        t0 = time.perf_counter()
        num = demodulated_response(q, omegas, args.steps_per_period)
        rel = np.abs(num - probe_amplitude(q, omegas)) / np.abs(probe_amplitude(q, omegas))
        print(f"{omega_r:7.1f}  {settling_time(q):11.0f}  {rel.max():11.3e}  "
              f"{time.perf_counter() - t0:8.2f}")


if __name__ == "__main__":
    main()
