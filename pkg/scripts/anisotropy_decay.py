"""Decay of the beta anisotropy of the free energy with xi = 2 pi k_B T a / (hbar c)."""
import argparse

import numpy as np

from thermal_forces import constants as C
from thermal_forces.casimir import anisotropy_signal


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--separation", type=float, default=1e-6)
    ap.add_argument("--xi-min", type=float, default=2.0)
    ap.add_argument("--xi-max", type=float, default=4.0)
    ap.add_argument("--points", type=int, default=9)
    args = ap.parse_args()
    xis = np.linspace(args.xi_min, args.xi_max, args.points)
    deltas, rels = [], []
    print(f"{'xi':>6} {'T/K':>10} {'dF J/m^2':>14} {'dF/|F0|':>12} {'model':>12}")
    for xi in xis:
        T = C.temperature_for_xi(xi, args.separation)
        s = anisotropy_signal(args.separation, T)
        deltas.append(s.delta)
        rels.append(s.relative)
        # leading n = 1 behaviour of dF: xi (2 xi + 1) exp(-2 xi), up to a constant
        print(f"{xi:6.3f} {T:10.2f} {s.delta:14.6e} {s.relative:12.6e} "
              f"{xi * (2 * xi + 1) * np.exp(-2 * xi):12.6e}")
    print(f"slope d ln|dF| / d xi      = {np.polyfit(xis, np.log(np.abs(deltas)), 1)[0]:.4f}")
    print(f"slope d ln|dF/F0| / d xi   = {np.polyfit(xis, np.log(np.abs(rels)), 1)[0]:.4f}")
    mid = 0.5 * (args.xi_min + args.xi_max)
    print(f"local slope of n = 1 model at xi = {mid:g}: {-2 + 1 / mid + 2 / (2 * mid + 1):.4f}")


if __name__ == "__main__":
    main()
