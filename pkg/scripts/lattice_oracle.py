"""Ring-by-ring level-shift sum against the continuum single-fluxon energy."""
import argparse

from thermal_forces import constants as C
from thermal_forces.fluxon import FluxonSystem, lattice_sum_energy, single_fluxon_energy


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--cutoff", type=float, default=1e-8)
    args = ap.parse_args()
    a0 = args.cutoff
    n2 = 1 / a0 ** 2
    print(f"{'R/a0':>8} {'lattice/closed':>16}")
    for ratio in (1e2, 3e2, 1e3, 3e3, 1e4, 3e4):
        sys_ = FluxonSystem(alphas=(args.alpha,), n2=n2, cutoff=a0, system_radius=ratio * a0)
        lat = lattice_sum_energy(args.alpha, n2, C.electron_mass, ratio * a0, a0)
        print(f"{ratio:8.0f} {lat / single_fluxon_energy(sys_):16.10f}")


if __name__ == "__main__":
    main()
