"""Casimir energies, free energies and pressures between uniaxial plates.

Internally every integral is dimensionless. With u = 2 K a and the Matsubara
wavenumbers nu_n = 2 a omega_n / c = 2 n xi, the free energy per area is

    F/A = k_B T / (32 pi^2 a^2) * [J(0) + 2 sum_{n>=1} J(nu_n)],
    J(nu) = int_0^{2pi} dphi int_nu^inf w dw ln(1 - alpha^2 e^{-w}),

where w = sqrt(u^2 + nu^2) and cos(theta) = nu / w. At T = 0 the radial
integral is done in closed form, int u^2 ln(1 - A e^{-u}) du = -2 Li_4(A), so

    E/A = -hbar c / (32 pi^3 a^3) * int_0^1 d(cos theta) int_0^{2pi} dphi Li_4(alpha^2).
"""
from dataclasses import dataclass, field
import math
from typing import Optional, Union

import numpy as np

from . import constants as const
from .kernel import ConductanceAngle, alpha_squared_perp, one_minus_alpha_squared
from .numerics import (
    ZETA3, QuadratureSpec, compensated_sum, integrate_clustered, integrate_finite,
    integrate_semi_infinite, log1mexp, polylog, richardson_derivative,
)

UNIAXIAL = "uniaxial"
ISOTROPIC = "isotropic_reference"

_LN2 = math.log(2.0)
N_MAX_CAP = 10_000


class ConvergenceError(RuntimeError):
    """Raised by callers that refuse unconverged results."""


@dataclass(frozen=True)
class PlateConfig:
    separation: float
    beta: float = 0.0
    mode: str = UNIAXIAL

    def __post_init__(self):
        if not self.separation > 0:
            raise ValueError(f"separation must be positive, got {self.separation!r}")
        if self.mode not in (UNIAXIAL, ISOTROPIC):
            raise ValueError(f"unknown plate mode {self.mode!r}")
        object.__setattr__(self, "beta", ConductanceAngle(self.beta).beta)


@dataclass(frozen=True)
class ThermalParams:
    temperature: float

    def __post_init__(self):
        if not self.temperature >= 0:
            raise ValueError(f"temperature must be non-negative, got {self.temperature!r}")

    @property
    def tau(self) -> float:
        """Matsubara spacing 2 pi k_B T / hbar (rad/s)."""
        return const.matsubara_frequency(1, self.temperature)


@dataclass(frozen=True)
class SumControl:
    n_max: Union[str, int] = "auto"
    term_rel_tol: float = 1e-10
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)

    def __post_init__(self):
        if self.n_max != "auto" and not (isinstance(self.n_max, int) and self.n_max >= 0):
            raise ValueError(f"n_max must be 'auto' or a non-negative int, got {self.n_max!r}")
        if not self.term_rel_tol > 0:
            raise ValueError(f"term_rel_tol must be positive, got {self.term_rel_tol!r}")


@dataclass
class EnergyResult:
    value: float
    terms: list
    truncation_bound: float
    error_estimate: float
    converged: bool

    @property
    def n_terms(self) -> int:
        return len(self.terms)


def _require_uniaxial(plates):
    if plates.mode != UNIAXIAL:
        raise ValueError("the path-integral kernel is defined for uniaxial plates only; "
                         "use isotropic_reference_energy for the isotropic reference")


def _quad_spec(spec):
    return spec if spec is not None else QuadratureSpec()


# ---------------------------------------------------------------------------
# zero temperature

def _phi_integral(f, beta, rel_tol, abs_tol):
    """Integral over phi in [0, 2pi) of a pi-periodic f, split at phi = beta.

    alpha^2 has its sharp structure at phi = 0 and phi = beta, so each piece
    carries it at its endpoints where the tanh-sinh nodes cluster.
    """
    if beta == 0.0:
        v, e, ok = integrate_clustered(f, 0.0, math.pi, rel_tol, abs_tol)
        return 2.0 * v, 2.0 * e, ok
    v1, e1, ok1 = integrate_clustered(f, 0.0, beta, rel_tol, abs_tol)
    v2, e2, ok2 = integrate_clustered(f, beta, math.pi, rel_tol, abs_tol)
    return 2.0 * (v1 + v2), 2.0 * (e1 + e2), ok1 and ok2


def zero_temperature_angular_integral(beta, spec: Optional[QuadratureSpec] = None):
    """int_0^1 dc int_0^{2pi} dphi Li_4(alpha^2); equals 2 pi zeta(4) at beta = 0."""
    spec = _quad_spec(spec)
    beta = ConductanceAngle(beta).beta
    inner_ok = [True]
    inner_err = [0.0]

    def over_c(c):
        def f(phi):
            om = one_minus_alpha_squared(c[:, None], phi[None, :], beta)
            return polylog(4, 1.0 - om)
        v, e, ok = _phi_integral(f, beta, 0.1 * spec.rel_tol, 0.0)
        inner_ok[0] &= ok
        inner_err[0] = max(inner_err[0], float(np.max(e)))
        return v

    res = integrate_finite(over_c, 0.0, 1.0, spec, singular_at_lo=True)
    return res, inner_ok[0], inner_err[0]


def energy_zero_temperature(plates: PlateConfig, spec: Optional[QuadratureSpec] = None) -> EnergyResult:
    """Casimir energy per area at T = 0 (J/m^2)."""
    _require_uniaxial(plates)
    res, inner_ok, inner_err = zero_temperature_angular_integral(plates.beta, spec)
    scale = -const.hbar * const.c / (32.0 * math.pi ** 3 * plates.separation ** 3)
    value = scale * res.value
    err = abs(scale) * (res.error_estimate + inner_err)
    return EnergyResult(value, [(0, value)], 0.0, err, res.converged and inner_ok)


# ---------------------------------------------------------------------------
# finite temperature

def _log_one_minus(alpha2_complement, w):
    """ln(1 - alpha^2 e^{-w}) given 1 - alpha^2 and a column of w values.

    Rows with w < ln 2 use 1 - x = (1 - e^{-w}) + e^{-w}(1 - alpha^2), a sum of
    positive parts; the rest use log1p, where x <= 1/2.
    """
    w = np.broadcast_to(w, (w.shape[0], 1))
    e = np.exp(-w)
    out = np.empty(np.broadcast_shapes(alpha2_complement.shape, w.shape))
    near = w[:, 0] < _LN2
    far = ~near
    if near.any():
        out[near] = np.log(-np.expm1(-w[near]) + e[near] * alpha2_complement[near])
    if far.any():
        out[far] = np.log1p(e[far] * alpha2_complement[far] - e[far])
    return out


def _complement_interior(cos_t, phi, beta):
    """1 - alpha^2 on interior phi nodes with cos(theta) > 0; no guards needed."""
    c2 = cos_t * cos_t
    sp2, cp2 = np.sin(phi) ** 2, np.cos(phi) ** 2
    sq2, cq2 = np.sin(phi - beta) ** 2, np.cos(phi - beta) ** 2
    return (math.sin(beta) ** 2 * c2) / ((sp2 + c2 * cp2) * (sq2 + c2 * cq2))


def matsubara_integral(nu, beta, spec: Optional[QuadratureSpec] = None):
    """J(nu) for one Matsubara wavenumber; returns an IntegralResult."""
    spec = _quad_spec(spec)
    beta = ConductanceAngle(beta).beta
    if nu == 0.0:
        # static mode: cos(theta) = 0, alpha^2 = 1 for every beta
        r = integrate_semi_infinite(lambda w: w * log1mexp(w), 1.0, spec,
                                    singular_at_zero=True)
        return type(r)(2.0 * math.pi * r.value, 2.0 * math.pi * r.error_estimate,
                       r.subdivisions_used, r.converged)
    inner_ok = [True]

    if beta == 0.0:
        def integrand(t):
            w = nu + t
            return 2.0 * math.pi * w * log1mexp(w)
    else:
        def integrand(t):
            w = nu + t
            cos_t = nu / w

            def f(phi):
                om = _complement_interior(cos_t[:, None], phi[None, :], beta)
                return _log_one_minus(om, w[:, None])

            # absolute floor tied to the largest value in the batch
            scale = 2.0 * math.pi * abs(math.log1p(-math.exp(-float(w.min()))))
            v, _, ok = _phi_integral(f, beta, 0.1 * spec.rel_tol, 1e-3 * spec.rel_tol * scale)
            inner_ok[0] &= ok
            return w * v

    r = integrate_semi_infinite(integrand, 1.0, spec)
    return type(r)(r.value, r.error_estimate, r.subdivisions_used, r.converged and inner_ok[0])


def matsubara_integral_perp(nu, spec: Optional[QuadratureSpec] = None):
    """J(nu) at beta = pi/2 built on the (K, n tau) form of the kernel.

    Integrates over u = 2 K a and phi in [0, pi/2] (fourfold symmetric),
    independently of the (w, theta) parametrisation of :func:`matsubara_integral`.
    """
    spec = _quad_spec(spec)
    inner_ok = [True]

    def integrand(u):
        w = np.sqrt(u * u + nu * nu)

        def f(phi):
            a2 = alpha_squared_perp(u[:, None], phi[None, :], 1, nu)
            return np.log1p(-a2 * np.exp(-w[:, None]))

        scale = abs(math.log1p(-math.exp(-float(w.min()))))
        v, _, ok = integrate_clustered(f, 0.0, 0.5 * math.pi, 0.1 * spec.rel_tol,
                                       1e-3 * spec.rel_tol * scale)
        inner_ok[0] &= ok
        return 4.0 * u * v

    r = integrate_semi_infinite(integrand, 1.0, spec, singular_at_zero=(nu == 0.0))
    return type(r)(r.value, r.error_estimate, r.subdivisions_used, r.converged and inner_ok[0])


def _prefactor(plates, thermal):
    return const.k_B * thermal.temperature / (32.0 * math.pi ** 2 * plates.separation ** 2)


def matsubara_tail_bound(n, xi):
    """Bound on sum_{m>n} |J(nu_m)| from |ln(1 - alpha^2 x)| <= |ln(1 - x)|.

    Uses J(nu) >= -2 pi [nu Li_2(e^-nu) + Li_3(e^-nu)] and Li_s(q) <= q/(1-q),
    summed as geometric series in r = e^{-2 xi}.
    """
    r = math.exp(-2.0 * xi)
    one_minus_r = -math.expm1(-2.0 * xi)
    rn1 = r ** (n + 1)
    s0 = rn1 / one_minus_r
    s1 = rn1 * ((n + 1) - n * r) / one_minus_r ** 2
    return 2.0 * math.pi * (2.0 * xi * s1 + s0) / (1.0 - rn1)


def _check_thermal(plates, thermal):
    _require_uniaxial(plates)
    if thermal.temperature == 0:
        raise ValueError("temperature is zero: the Matsubara sum degenerates, "
                         "use energy_zero_temperature instead")


def matsubara_term(n: int, plates: PlateConfig, thermal: ThermalParams,
                   spec: Optional[QuadratureSpec] = None) -> float:
    """Single (not doubled) Matsubara contribution to F/A in J/m^2."""
    return _matsubara_term_result(n, plates, thermal, spec)[0]


def _matsubara_term_result(n, plates, thermal, spec, integral=matsubara_integral):
    _check_thermal(plates, thermal)
    if n < 0:
        raise ValueError("use |n|; negative Matsubara terms equal the positive ones")
    xi = const.xi_parameter(plates.separation, thermal.temperature).value
    if integral is matsubara_integral:
        r = integral(2.0 * n * xi, plates.beta, spec)
    else:
        r = integral(2.0 * n * xi, spec)
    pref = _prefactor(plates, thermal)
    return pref * r.value, pref * r.error_estimate, r.converged


def _matsubara_sum(plates, thermal, control, integral):
    _check_thermal(plates, thermal)
    control = control if control is not None else SumControl()
    xi = const.xi_parameter(plates.separation, thermal.temperature).value
    pref = _prefactor(plates, thermal)
    spec = control.quadrature

    terms, errs = [], []
    converged = True
    v, e, ok = _matsubara_term_result(0, plates, thermal, spec, integral)
    terms.append((0, v))
    errs.append(e)
    converged &= ok
    partial = [v]
    n = 0
    fixed = control.n_max != "auto"
    while True:
        tail = 2.0 * pref * matsubara_tail_bound(n, xi)
        if fixed:
            if n >= control.n_max:
                break
        elif tail < control.term_rel_tol * abs(compensated_sum(partial)):
            break
        if n >= N_MAX_CAP:
            converged = False
            break
        n += 1
        v, e, ok = _matsubara_term_result(n, plates, thermal, spec, integral)
        terms.append((n, v))
        errs.append(2.0 * e)
        partial.append(2.0 * v)
        converged &= ok
    return EnergyResult(compensated_sum(partial), terms, tail, compensated_sum(errs), converged)


def free_energy_thermal(plates: PlateConfig, thermal: ThermalParams,
                        control: Optional[SumControl] = None) -> EnergyResult:
    """Casimir free energy per area at T > 0 (J/m^2) from the Matsubara sum."""
    return _matsubara_sum(plates, thermal, control, matsubara_integral)


def free_energy_perp(plates: PlateConfig, thermal: ThermalParams,
                     control: Optional[SumControl] = None) -> EnergyResult:
    """Free energy at beta = pi/2 through the perpendicular-plate kernel."""
    if not math.isclose(plates.beta, 0.5 * math.pi, rel_tol=0, abs_tol=1e-12):
        raise ValueError(f"free_energy_perp needs beta = pi/2, got {plates.beta!r}")
    return _matsubara_sum(plates, thermal, control, matsubara_integral_perp)


def free_energy(plates: PlateConfig, thermal: ThermalParams,
                control: Optional[SumControl] = None) -> EnergyResult:
    """Dispatch to the zero- or finite-temperature evaluation."""
    control = control if control is not None else SumControl()
    if thermal.temperature == 0:
        return energy_zero_temperature(plates, control.quadrature)
    return free_energy_thermal(plates, thermal, control)


# ---------------------------------------------------------------------------
# closed forms

def isotropic_reference_pressure(a: float) -> float:
    """-pi^2 hbar c / (240 a^4) for perfectly conducting isotropic plates."""
    if not a > 0:
        raise ValueError(f"separation must be positive, got {a!r}")
    return -math.pi ** 2 * const.hbar * const.c / (240.0 * a ** 4)


def isotropic_reference_energy(a: float) -> float:
    if not a > 0:
        raise ValueError(f"separation must be positive, got {a!r}")
    return -math.pi ** 2 * const.hbar * const.c / (720.0 * a ** 3)


def parallel_zero_temperature_energy(a: float) -> float:
    """Closed form at beta = 0: half the isotropic value."""
    return 0.5 * isotropic_reference_energy(a)


def static_mode_energy(a: float, T: float) -> float:
    """Closed form of the n = 0 term, -zeta(3) k_B T / (16 pi a^2)."""
    if not a > 0:
        raise ValueError(f"separation must be positive, got {a!r}")
    return -ZETA3 * const.k_B * T / (16.0 * math.pi * a ** 2)


def high_t_pressure_closed_form(a: float, T: float) -> float:
    """-d/da of the static-mode free energy, -zeta(3) k_B T / (8 pi a^3)."""
    if not a > 0:
        raise ValueError(f"separation must be positive, got {a!r}")
    if not T > 0:
        raise ValueError(f"temperature must be positive, got {T!r}")
    return -ZETA3 * const.k_B * T / (8.0 * math.pi * a ** 3)


# ---------------------------------------------------------------------------
# forces and anisotropy

def casimir_pressure(plates: PlateConfig, thermal: ThermalParams,
                     control: Optional[SumControl] = None, levels=4, step_fraction=0.01):
    """-dF/da by Richardson-extrapolated central differences; negative = attraction.

    Returns ``(pressure, error_estimate, converged)``.
    """
    _require_uniaxial(plates)
    control = control if control is not None else SumControl()
    converged = [True]
    errors = []

    def energy(a):
        r = free_energy(PlateConfig(a, plates.beta), thermal, control)
        converged[0] &= r.converged
        errors.append(r.error_estimate + r.truncation_bound)
        return r.value

    a = plates.separation
    h0 = step_fraction * a
    d, err = richardson_derivative(energy, a, h0, levels, positive_domain=True)
    # quadrature noise in F enters the difference quotient amplified by 1/h
    err += max(errors) / (h0 / 2 ** (levels - 1))
    return -d, err, converged[0]


@dataclass
class AnisotropySignal:
    delta: float
    relative: float
    parallel: EnergyResult
    perpendicular: EnergyResult

    @property
    def converged(self):
        return self.parallel.converged and self.perpendicular.converged


def anisotropy_signal(a: float, T: float, control: Optional[SumControl] = None) -> AnisotropySignal:
    """F(beta = pi/2) - F(beta = 0) and its size relative to |F(beta = 0)|."""
    thermal = ThermalParams(T)
    par = free_energy(PlateConfig(a, 0.0), thermal, control)
    perp = free_energy(PlateConfig(a, 0.5 * math.pi), thermal, control)
    delta = perp.value - par.value
    return AnisotropySignal(delta, delta / abs(par.value), par, perp)


def matsubara_prefactor_bound(a: float, T: float) -> float:
    """2 exp(-4 pi k_B T a / (hbar c)): bound on the n = +-1 integrand prefactor."""
    return 2.0 * math.exp(-2.0 * const.xi_parameter(a, T).value)
