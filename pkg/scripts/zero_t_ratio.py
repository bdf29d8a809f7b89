"""Zero-temperature energy E(beta)/E(0) across beta, with a brute-force grid cross-check."""
import argparse
import math

import numpy as np

from thermal_forces.casimir import PlateConfig, energy_zero_temperature
from thermal_forces.kernel import alpha_squared
from thermal_forces.numerics import ZETA4, polylog


def grid_ratio(beta, n=400):
    # midpoint rule in (cos theta, phi) on Li_4(alpha^2); crude but independent
    c = (np.arange(n) + 0.5) / n
    phi = 2 * math.pi * (np.arange(2 * n) + 0.5) / (2 * n)
    a2 = alpha_squared((np.arccos(c)[:, None], phi[None, :]), beta)
    integral = polylog(4, a2.ravel()).sum() * (1 / n) * (2 * math.pi / (2 * n))
    return integral / (2 * math.pi * ZETA4)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=9)
    ap.add_argument("--grid", type=int, default=200, help="grid size for the cross-check")
    args = ap.parse_args()
    e0 = energy_zero_temperature(PlateConfig(1e-6, 0.0)).value
    print(f"{'beta/deg':>9} {'E/E0':>16} {'grid':>12}")
    for beta in np.linspace(0, math.pi / 2, args.points):
        r = energy_zero_temperature(PlateConfig(1e-6, beta)).value / e0
        print(f"{math.degrees(beta):9.2f} {r:16.12f} {grid_ratio(beta, args.grid):12.6f}")


if __name__ == "__main__":
    main()
