"""Aharonov-Bohm interaction of fluxons threading a 2-D electron medium.

Fluxes are measured in units of the electron flux quantum h/e, so a
superconducting vortex (h/2e) has flux fraction 1/2. Energies are in J,
forces per unit fluxon length in N (J/m); negative force means attraction.
"""
from dataclasses import dataclass, field
from importlib import resources
import math
from pathlib import Path
import warnings

import numpy as np

from . import constants as const


class FluxonWarning(UserWarning):
    pass


@dataclass(frozen=True)
class FluxonSystem:
    alphas: tuple = (0.5,)
    positions: tuple = ((0.0, 0.0),)
    n2: float = 1e17
    mass: float = const.electron_mass
    system_radius: float = 1e-3
    cutoff: float = 1e-9
    xi_pair: float = 1.0

    def __post_init__(self):
        if not self.n2 > 0:
            raise ValueError(f"n2 must be positive, got {self.n2!r}")
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass!r}")
        if not 0 < self.cutoff < self.system_radius:
            raise ValueError("need 0 < cutoff < system_radius, got "
                             f"cutoff={self.cutoff!r}, system_radius={self.system_radius!r}")
        if len(self.alphas) != len(self.positions):
            raise ValueError("one position per flux fraction required")
        pts = np.asarray(self.positions, dtype=float).reshape(-1, 2)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if np.hypot(*(pts[i] - pts[j])) <= self.cutoff:
                    raise ValueError(f"fluxons {i} and {j} closer than the cutoff")

    @property
    def kinetic_scale(self) -> float:
        """n2 hbar^2 / m, the energy scale of all AB interactions (J)."""
        return self.n2 * const.hbar ** 2 / self.mass


@dataclass(frozen=True)
class DecoherenceParams:
    temperature: float
    fermi_velocity: float
    planck_prefactor: str = "hbar"

    def __post_init__(self):
        if not self.temperature > 0:
            raise ValueError(f"temperature must be positive, got {self.temperature!r}")
        if not self.fermi_velocity > 0:
            raise ValueError(f"fermi_velocity must be positive, got {self.fermi_velocity!r}")
        if self.planck_prefactor not in ("h", "hbar"):
            raise ValueError(f"planck_prefactor must be 'h' or 'hbar', got {self.planck_prefactor!r}")


@dataclass(frozen=True)
class Material:
    name: str
    london_depth: float
    fermi_velocity: float
    critical_temperature: float

    def __post_init__(self):
        for attr in ("london_depth", "fermi_velocity", "critical_temperature"):
            if not getattr(self, attr) > 0:
                raise ValueError(f"{attr} of {self.name!r} must be positive")


def effective_alpha(alpha: float) -> float:
    """Distance from ``alpha`` to the nearest integer; integer flux is pure gauge."""
    # |alpha| first so that alpha and -alpha give bit-identical results
    x = abs(alpha)
    frac = x - math.floor(x)
    return min(frac, 1.0 - frac)


def angular_level_shift(r: float, alpha: float, mass: float = const.electron_mass) -> float:
    """Shift of a +-|l| pair of angular levels at radius r, hbar^2 alpha^2 / (2 m r^2)."""
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r!r}")
    return const.hbar ** 2 * effective_alpha(alpha) ** 2 / (2.0 * mass * r * r)


def single_fluxon_energy(sys: FluxonSystem) -> float:
    """Total level shift W of one fluxon at the centre of a disc.

    Continuum form of the ring sum with pair density n2/2:
    (alpha^2/2) (n2 hbar^2 / 2m) int_{a0}^{R} 2 pi r dr / r^2
    = pi alpha^2 n2 hbar^2 / (2m) ln(R/a0).
    """
    if len(sys.alphas) != 1:
        raise ValueError("single_fluxon_energy needs exactly one fluxon")
    alpha = effective_alpha(sys.alphas[0])
    return (math.pi * alpha ** 2 * sys.kinetic_scale / 2.0
            * math.log(sys.system_radius / sys.cutoff))


def lattice_sum_energy(alpha: float, n2: float, mass: float, system_radius: float,
                       cutoff: float) -> float:
    """Discrete double sum over rings r_j and angular pairs |l| of pair shifts.

    The disc is cut into annuli [j a0, (j+1) a0], j = 1 .. R/a0 - 1, each
    represented by its mid radius and holding round(n2 * area) electron
    states, i.e. half as many (+|l|, -|l|) pairs.
    """
    rings = int(round(system_radius / cutoff))
    j = np.arange(1, rings, dtype=float)
    r = (j + 0.5) * cutoff
    states = np.rint(n2 * math.pi * (2.0 * j + 1.0) * cutoff ** 2)
    shift = const.hbar ** 2 * effective_alpha(alpha) ** 2 / (2.0 * mass * r * r)
    return math.fsum(0.5 * states * shift)


def _check_separation(separation, sys):
    if not separation > sys.cutoff:
        raise ValueError(f"separation {separation!r} must exceed the cutoff {sys.cutoff!r}")
    if separation >= sys.system_radius / 10.0:
        warnings.warn(f"separation {separation!r} is not small against the system radius "
                      f"{sys.system_radius!r}; the logarithmic pair law assumes a << R",
                      FluxonWarning, stacklevel=3)


def pair_interaction_energy(separation: float, sys: FluxonSystem) -> float:
    """xi_pair (pi/16) (n2 hbar^2/m) ln(a/a0)."""
    _check_separation(separation, sys)
    return sys.xi_pair * math.pi / 16.0 * sys.kinetic_scale * math.log(separation / sys.cutoff)


def ab_force(separation: float, sys: FluxonSystem) -> float:
    """-dW/da of the pair energy: -xi_pair (pi/16) (n2 hbar^2/m) / a."""
    _check_separation(separation, sys)
    return -sys.xi_pair * math.pi / 16.0 * sys.kinetic_scale / separation


def decoherence_time(params: DecoherenceParams) -> float:
    planck = const.h if params.planck_prefactor == "h" else const.hbar
    return planck / (const.k_B * params.temperature)


def decoherence_length(params: DecoherenceParams) -> float:
    """Distance a carrier at the Fermi velocity covers in one decoherence time."""
    return decoherence_time(params) * params.fermi_velocity


def screening_factor(separation: float, params: DecoherenceParams) -> float:
    return math.exp(-separation / decoherence_length(params))


def screened_ab_force(separation: float, sys: FluxonSystem, params: DecoherenceParams) -> float:
    return ab_force(separation, sys) * screening_factor(separation, params)


def abrikosov_spacing(B: float) -> float:
    """Nearest-neighbour spacing of a triangular vortex lattice carrying h/2e per cell."""
    if not B > 0:
        raise ValueError(f"magnetic field must be positive, got {B!r}")
    return math.sqrt(2.0 * const.flux_quantum_pair / (math.sqrt(3.0) * B))


@dataclass(frozen=True)
class FeasibilityReport:
    material: str
    temperature: float
    field: float
    decoherence_length: float
    london_depth: float
    lattice_spacing: float
    spacing_within_screening: bool  # L < l_dec
    coherence_exceeds_london: bool  # l_dec > lambda_L
    strongly_suppressed: bool  # lambda_L > l_dec


def feasibility_report(material: Material, T: float, B: float,
                       planck_prefactor: str = "hbar") -> FeasibilityReport:
    """Compare the screening length with the vortex spacing and the London depth."""
    if not 0 < T < material.critical_temperature:
        raise ValueError(f"temperature {T!r} K outside (0, T_c = {material.critical_temperature!r} K): "
                         "no superconductivity, no fluxons")
    l_dec = decoherence_length(DecoherenceParams(T, material.fermi_velocity, planck_prefactor))
    spacing = abrikosov_spacing(B)
    return FeasibilityReport(
        material=material.name, temperature=T, field=B,
        decoherence_length=l_dec, london_depth=material.london_depth,
        lattice_spacing=spacing,
        spacing_within_screening=spacing < l_dec,
        coherence_exceeds_london=l_dec > material.london_depth,
        strongly_suppressed=material.london_depth > l_dec,
    )


def parse_materials(text: str, source: str = "<string>") -> dict:
    """Parse the ``name, lambda_L_m, v_F_m_per_s, T_c_K`` table format."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 4:
            raise ValueError(f"{source}:{lineno}: expected 4 comma-separated fields, got {len(parts)}")
        try:
            out[parts[0]] = Material(parts[0], float(parts[1]), float(parts[2]), float(parts[3]))
        except ValueError as exc:
            raise ValueError(f"{source}:{lineno}: {exc}") from None
    return out


def load_materials(path=None) -> dict:
    if path is None:
        text = resources.files("thermal_forces").joinpath("data/materials.txt").read_text()
        return parse_materials(text, "materials.txt")
    path = Path(path)
    return parse_materials(path.read_text(), str(path))
