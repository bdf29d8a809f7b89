"""Acceptance criteria, one test each, at the stated tolerances.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from thermal_forces import constants as C
from thermal_forces.casimir import (
    PlateConfig, SumControl, ThermalParams, casimir_pressure, energy_zero_temperature,
    free_energy_perp, free_energy_thermal, high_t_pressure_closed_form,
    isotropic_reference_energy, isotropic_reference_pressure, matsubara_prefactor_bound,
    matsubara_term,
)
from thermal_forces.fluxon import (
    DecoherenceParams, FluxonSystem, ab_force, decoherence_length, lattice_sum_energy,
    screened_ab_force, single_fluxon_energy,
)
from thermal_forces.numerics import ZETA3, richardson_derivative

from conftest import HALF_PI, MICRON, rel, report

ZERO_T_RATIO = 0.2984897750557058
QUOTED_PREFACTOR_BOUND = 0.353


def test_c01_zero_temperature_parallel_law():
    worst, slowest = 0.0, 0.0
    for a in (0.5 * MICRON, MICRON, 2 * MICRON):
        t0 = time.perf_counter()
        r = energy_zero_temperature(PlateConfig(a, 0.0))
        slowest = max(slowest, time.perf_counter() - t0)
        worst = max(worst, rel(r.value, -math.pi ** 2 * C.hbar * C.c / (1440 * a ** 3)))
    ok = worst < 1e-6 and slowest < 1.0
    report(1, "zero-T parallel law", ok, f"max rel err {worst:.2e}, slowest {slowest:.3f} s")
    assert ok


def test_c02_isotropic_reference():
    a = MICRON
    closed = -math.pi ** 2 * C.hbar * C.c / (240 * a ** 4)
    p = isotropic_reference_pressure(a)
    d, _ = richardson_derivative(isotropic_reference_energy, a, a / 100, positive_domain=True)
    err = rel(-d, p)
    ok = p == closed and err < 1e-12
    report(2, "isotropic reference", ok, f"P(1 um) = {p:.6e} Pa, -dE/da rel err {err:.1e}")
    assert ok


def test_c03_static_mode_closed_form():
    a, T = MICRON, 300.0
    t0 = matsubara_term(0, PlateConfig(a, 0.7), ThermalParams(T))
    err = rel(t0, -ZETA3 * C.k_B * T / (16 * math.pi * a ** 2))
    ok = err < 1e-8 and f"{ZETA3:.4g}" == "1.202"
    report(3, "static-mode closed form", ok, f"rel err {err:.1e}, zeta(3) = {ZETA3:.4g}")
    assert ok


def test_c04_classical_limit():
    a = MICRON
    T = C.temperature_for_xi(5.0, a)
    th = ThermalParams(T)
    f_closed = -ZETA3 * C.k_B * T / (16 * math.pi * a ** 2)
    p_closed = high_t_pressure_closed_form(a, T)
    assert p_closed == -ZETA3 * C.k_B * T / (8 * math.pi * a ** 3)
    f_err, p_err = {}, {}
    for beta in (0.0, HALF_PI):
        f_err[beta] = rel(free_energy_thermal(PlateConfig(a, beta), th).value, f_closed)
        p_err[beta] = rel(casimir_pressure(PlateConfig(a, beta), th)[0], p_closed)
    ok = max(f_err.values()) < 1e-3 and max(p_err.values()) < 1e-3
    detail = ", ".join(f"beta={b:.4g}: F {f_err[b]:.2e}, P {p_err[b]:.2e}" for b in f_err)
    report(4, "classical limit at xi = 5", ok, detail)
    assert ok, detail


def test_c05_low_temperature_continuity():
    a = MICRON
    T = C.temperature_for_xi(0.01, a)
    errs = {}
    for beta in (0.0, HALF_PI):
        e0 = energy_zero_temperature(PlateConfig(a, beta)).value
        errs[beta] = rel(free_energy_thermal(PlateConfig(a, beta), ThermalParams(T)).value, e0)
    ok = max(errs.values()) < 1e-3
    report(5, "T -> 0 continuity at xi = 0.01", ok,
           ", ".join(f"beta={b:.4g}: {e:.1e}" for b, e in errs.items()))
    assert ok


def test_c06_anisotropy_suppression():
    a = MICRON
    xis = np.linspace(2.0, 4.0, 9)
    t0 = time.perf_counter()
    deltas, relatives = [], []
    for xi in xis:
        th = ThermalParams(C.temperature_for_xi(xi, a))
        par = free_energy_thermal(PlateConfig(a, 0.0), th).value
        perp = free_energy_thermal(PlateConfig(a, HALF_PI), th).value
        deltas.append(perp - par)
        relatives.append((perp - par) / abs(par))
    elapsed = time.perf_counter() - t0
    slope = np.polyfit(xis, np.log(np.abs(deltas)), 1)[0]
    slope_rel = np.polyfit(xis, np.log(np.abs(relatives)), 1)[0]
    ok = -2.4 <= slope <= -1.6 and elapsed < 60
    report(6, "anisotropy suppression", ok,
           f"slope of ln|dF| {slope:.4f} (ln|dF/F| {slope_rel:.4f}), fit {elapsed:.1f} s")
    assert ok, f"slope {slope}"


def test_c07_prefactor_bound_value():
    v = matsubara_prefactor_bound(MICRON, 300.0)
    assert v == 2 * math.exp(-4 * math.pi * C.k_B * 300.0 * MICRON / (C.hbar * C.c))
    dev = rel(v, QUOTED_PREFACTOR_BOUND)
    ok = dev < 0.15
    report(7, "2 exp(-2 xi) at 1 um, 300 K", ok,
           f"computed {v:.4f} vs quoted {QUOTED_PREFACTOR_BOUND}, deviation {100 * dev:.1f}%")
    assert ok


def test_c08_zero_temperature_ratio():
    e0 = energy_zero_temperature(PlateConfig(MICRON, 0.0)).value
    e90 = energy_zero_temperature(PlateConfig(MICRON, HALF_PI)).value
    ratio = e90 / e0
    frozen = rel(ratio, ZERO_T_RATIO) < 1e-6
    ok = 0.4 < ratio < 0.75 and frozen
    report(8, "zero-T ratio E(pi/2)/E(0)", ok,
           f"ratio {ratio:.10f}, window (0.4, 0.75), frozen value reproduced: {frozen}")
    assert ok, f"ratio {ratio}"


def test_c09_two_path_equality():
    worst = 0.0
    for a, T in ((MICRON, 300.0), (0.5 * MICRON, 100.0), (2 * MICRON, 1000.0)):
        plates, th = PlateConfig(a, HALF_PI), ThermalParams(T)
        worst = max(worst, rel(free_energy_perp(plates, th).value,
                               free_energy_thermal(plates, th).value))
    ok = worst < 1e-8
    report(9, "two-path equality at beta = pi/2", ok, f"max rel diff {worst:.1e}")
    assert ok


def _w(alpha):
    return single_fluxon_energy(FluxonSystem(alphas=(alpha,)))


def test_c10_fluxon_properties():
    grid = [k / 100 for k in range(101)]
    periodic = all(_w(x) == _w(x + 1) for x in (0.0, 0.25, 0.5, 0.75, 0.125))
    symmetric = all(_w(x) == _w(-x) for x in grid)
    maximal = max(grid, key=_w) == 0.5
    sys_ = FluxonSystem()
    fa = [ab_force(a, sys_) * a for a in (2e-9, 1e-8, 1e-7, 1e-5)]
    inverse = max(fa) - min(fa) <= 1e-12 * abs(fa[0])
    a0 = 1e-8
    n2 = 1 / a0 ** 2
    closed = single_fluxon_energy(FluxonSystem(n2=n2, cutoff=a0, system_radius=1e3 * a0))
    lattice_err = rel(lattice_sum_energy(0.5, n2, sys_.mass, 1e3 * a0, a0), closed)
    a = 1e-7
    cold = DecoherenceParams(1e-8, 1.37e6, "hbar")
    assert a / decoherence_length(cold) < 1e-6
    screen_err = abs(screened_ab_force(a, sys_, cold) / ab_force(a, sys_) - 1)
    ok = periodic and symmetric and maximal and inverse and lattice_err < 0.05 and screen_err < 1e-6
    report(10, "fluxon property suite", ok,
           f"lattice-sum rel err {lattice_err:.2e} at R/a0 = 1e3, cold screening {screen_err:.1e}")
    assert ok


def test_c11_sweep_determinism(tmp_path):
    argv = [sys.executable, "-m", "thermal_forces", "sweep", "--var", "separation",
            "--start", "0.5um", "--stop", "5um", "--steps", "50", "--scale", "log",
            "--temperature", "300", "--beta", "90deg", "--jobs", "8"]
    outputs = []
    for i in range(2):
        path = tmp_path / f"run{i}.csv"
        subprocess.run(argv + ["--output", str(path)], check=True)
        outputs.append(path.read_bytes())
    n_records = outputs[0].count(b"\n") - 1
    ok = outputs[0] == outputs[1] and n_records == 50
    report(11, "sweep determinism", ok, f"{n_records} records, byte-identical: {outputs[0] == outputs[1]}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
