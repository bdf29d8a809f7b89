"""Free energy and pressure against the static-mode closed forms as xi grows."""
import argparse

import numpy as np

from thermal_forces import constants as C
from thermal_forces.casimir import (
    PlateConfig, ThermalParams, casimir_pressure, free_energy_thermal,
    high_t_pressure_closed_form, static_mode_energy,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--separation", type=float, default=1e-6)
    ap.add_argument("--beta", type=float, nargs="*", default=[0.0, np.pi / 4, np.pi / 2])
    args = ap.parse_args()
    a = args.separation
    print(f"{'xi':>5} {'beta':>7} {'F/F_0 - 1':>12} {'P/P_0 - 1':>12}")
    for xi in (1.0, 2.0, 3.0, 5.0, 8.0):
        T = C.temperature_for_xi(xi, a)
        for beta in args.beta:
            plates, th = PlateConfig(a, beta), ThermalParams(T)
            f = free_energy_thermal(plates, th).value / static_mode_energy(a, T) - 1
            p = casimir_pressure(plates, th)[0] / high_t_pressure_closed_form(a, T) - 1
            print(f"{xi:5.1f} {beta:7.4f} {f:12.3e} {p:12.3e}")


if __name__ == "__main__":
    main()
