"""Current-alignment kernel alpha^2 between two uniaxially conducting plates.

alpha is the cosine of the angle between the conserved 3-currents induced in
the two plates by a Euclidean mode k = |k| (sin t cos p, sin t sin p, cos t),
where the plates conduct along x and along the direction at angle beta.

Besides the closed form, the module exposes the complement 1 - alpha^2, which
reduces to

    sin^2(beta) cos^2(t) / [(sin^2 p + cos^2 t cos^2 p)(sin^2 q + cos^2 t cos^2 q)]

with q = p - beta. It is free of cancellation and is what the free-energy
integrands use.
"""
from dataclasses import dataclass
import math

import numpy as np


@dataclass(frozen=True)
class ModeDirection:
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        object.__setattr__(self, "phi", self.phi % (2.0 * math.pi))


@dataclass(frozen=True)
class ConductanceAngle:
    """Angle between the conduction directions, wrapped into [0, pi)."""

    beta: float

    def __post_init__(self):
        object.__setattr__(self, "beta", float(self.beta) % math.pi)

    def __float__(self):
        return self.beta


def _beta(beta):
    return float(beta) % math.pi if not isinstance(beta, ConductanceAngle) else beta.beta


def alpha_squared(direction, beta):
    """alpha^2 for a mode direction (polar theta, azimuth phi) and angle beta.

    Accepts a :class:`ModeDirection` or a ``(theta, phi)`` pair of arrays.
    At theta = pi/2 the value is 1, including the removable 0/0 points.
    """
    if isinstance(direction, ModeDirection):
        theta, phi = direction.theta, direction.phi
    else:
        theta, phi = direction
    b = _beta(beta)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    s2 = np.sin(theta) ** 2
    num = (math.cos(b) - s2 * np.cos(phi) * np.cos(phi - b)) ** 2
    den = (1.0 - s2 * np.cos(phi) ** 2) * (1.0 - s2 * np.cos(phi - b) ** 2)
    equatorial = np.isclose(np.cos(theta), 0.0, rtol=0.0, atol=1e-15)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(equatorial | (den == 0), 1.0, num / np.where(den == 0, 1.0, den))
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def one_minus_alpha_squared(cos_theta, phi, beta):
    """1 - alpha^2 evaluated without cancellation; broadcasts over arrays."""
    b = _beta(beta)
    c2 = np.asarray(cos_theta, dtype=float) ** 2
    phi = np.asarray(phi, dtype=float)
    sp, cp = np.sin(phi), np.cos(phi)
    sq, cq = np.sin(phi - b), np.cos(phi - b)
    den = (sp * sp + c2 * cp * cp) * (sq * sq + c2 * cq * cq)
    num = math.sin(b) ** 2 * c2
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)
    return np.clip(out, 0.0, 1.0)


def alpha_squared_perp(K, phi, n, tau):
    """alpha^2 at beta = pi/2 written in transverse momentum K and n*tau.

    Only the ratio K / (n tau) matters, so K and tau may be given in any
    common unit.
    """
    K = np.asarray(K, dtype=float)
    w = np.asarray(n * tau, dtype=float)
    if np.any((K == 0) & (w == 0)):
        raise ValueError("alpha^2 undefined for K = 0 at the static Matsubara mode")
    phi = np.asarray(phi, dtype=float)
    K2, w2 = K * K, w * w
    cs = np.cos(phi) * np.sin(phi)
    out = (K2 * cs) ** 2 / ((w2 + K2 * np.sin(phi) ** 2) * (w2 + K2 * np.cos(phi) ** 2))
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def one_minus_alpha_squared_perp(K, phi, nu):
    """Complement of :func:`alpha_squared_perp`; ``nu`` is n*tau in K's unit.

    Equal to nu^2 (nu^2 + K^2) / [(nu^2 + K^2 sin^2 p)(nu^2 + K^2 cos^2 p)].
    """
    K2 = np.asarray(K, dtype=float) ** 2
    nu2 = float(nu) ** 2
    phi = np.asarray(phi, dtype=float)
    den = (nu2 + K2 * np.sin(phi) ** 2) * (nu2 + K2 * np.cos(phi) ** 2)
    return np.clip(nu2 * (nu2 + K2) / den, 0.0, 1.0)
