"""Physical constants (CODATA 2018) and the few unit conversions used here.

Every other module takes its constants from this file.
"""
from dataclasses import dataclass
import math


@dataclass(frozen=True)
class PhysicalConstants:
    h: float = 6.62607015e-34  # J s (exact)
    c: float = 299792458.0  # m/s (exact)
    k_B: float = 1.380649e-23  # J/K (exact)
    e: float = 1.602176634e-19  # C (exact)
    electron_mass: float = 9.1093837015e-31  # kg

    @property
    def hbar(self) -> float:
        # derived rather than the rounded CODATA literal so that h == 2*pi*hbar
        return self.h / (2.0 * math.pi)

    @property
    def flux_quantum_electron(self) -> float:
        """h/e in Wb."""
        return self.h / self.e

    @property
    def flux_quantum_pair(self) -> float:
        """h/2e in Wb."""
        return self.h / (2.0 * self.e)


CODATA2018 = PhysicalConstants()

h = CODATA2018.h
hbar = CODATA2018.hbar
c = CODATA2018.c
k_B = CODATA2018.k_B
e = CODATA2018.e
electron_mass = CODATA2018.electron_mass
flux_quantum_electron = CODATA2018.flux_quantum_electron
flux_quantum_pair = CODATA2018.flux_quantum_pair


@dataclass(frozen=True)
class Xi:
    """Dimensionless thermal parameter 2 pi k_B T a / (hbar c)."""

    value: float

    def __post_init__(self):
        if not self.value >= 0.0:
            raise ValueError(f"xi must be non-negative, got {self.value!r}")

    def __float__(self):
        return self.value


def xi_parameter(a: float, T: float) -> Xi:
    """Ratio of the lowest nonzero Matsubara wavenumber to the inverse gap."""
    if not a > 0:
        raise ValueError(f"separation must be positive, got {a!r}")
    if not T >= 0:
        raise ValueError(f"temperature must be non-negative, got {T!r}")
    return Xi(2.0 * math.pi * k_B * T * a / (hbar * c))


def matsubara_frequency(n: int, T: float) -> float:
    """Angular Matsubara frequency 2 pi n k_B T / hbar in rad/s."""
    if not T >= 0:
        raise ValueError(f"temperature must be non-negative, got {T!r}")
    return 2.0 * math.pi * n * k_B * T / hbar


def temperature_for_xi(xi: float, a: float) -> float:
    """Inverse of :func:`xi_parameter` in T."""
    if not a > 0:
        raise ValueError(f"separation must be positive, got {a!r}")
    return xi * hbar * c / (2.0 * math.pi * k_B * a)


def energy_scale(a: float) -> float:
    """hbar c / a, the natural energy unit of a gap of width a (J)."""
    return hbar * c / a
