"""Thermal Casimir forces between uniaxial plates and screened AB forces between fluxons."""
from .constants import matsubara_frequency, xi_parameter
from .casimir import (
    EnergyResult, PlateConfig, SumControl, ThermalParams, anisotropy_signal, casimir_pressure,
    energy_zero_temperature, free_energy, free_energy_perp, free_energy_thermal,
    high_t_pressure_closed_form, isotropic_reference_energy, isotropic_reference_pressure,
    matsubara_term,
)
from .fluxon import (
    DecoherenceParams, FluxonSystem, Material, ab_force, abrikosov_spacing, decoherence_length,
    feasibility_report, screened_ab_force, single_fluxon_energy,
)
from .numerics import QuadratureSpec

__version__ = "0.1.0"
