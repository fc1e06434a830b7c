"""Closed-form link quantities for the ground-to-UAV uplink.

The cost of serving a user at ground position ``w`` from a UAV at
``(p, h)`` is the minimum transmit power for a reliable link,

    P(w, p, h) = (||w - p||^2 + h^2)^gamma / h^kappa / (beta0 * D0(kappa)),

where ``gamma = (alpha + kappa) / 2`` combines the path-loss exponent
``alpha`` with the cosine-pattern exponent ``kappa`` of the directional
receive antenna.  In normalized mode the constant ``beta0 * D0`` is
taken as 1; it rescales powers but never changes optimal deployments.
Physical mode keeps the constant and is the right mode when comparing
antennas with different ``kappa``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError

__all__ = [
    "PowerParams", "LinkBudget", "LosParams",
    "directivity", "hpbw_degrees", "link_beta0", "tx_power", "regularized_los",
]


@dataclass(frozen=True)
class PowerParams:
    """Fixed model parameters of one antenna/path-loss configuration.

    ``normalized`` selects whether powers carry the 1/(beta0 * D0(kappa))
    prefactor (False) or drop it (True, the default used for optimization).
    """

    alpha: float
    kappa: float
    h_min: float
    beta0: float = 1.0
    normalized: bool = True

    def __post_init__(self):
        if self.alpha < 1.0:
            raise DomainError(f"path-loss exponent alpha={self.alpha} must be >= 1")
        if self.kappa < 0.0:
            raise DomainError(f"antenna exponent kappa={self.kappa} must be >= 0")
        if self.beta0 <= 0.0:
            raise DomainError("beta0 must be positive")
        if self.h_min <= 0.0:
            raise DomainError("h_min must be positive")

    @property
    def gamma(self) -> float:
        return 0.5 * (self.alpha + self.kappa)

    @property
    def power_scale(self) -> float:
        """Multiplier applied to the raw cost (r^2 + h^2)^gamma / h^kappa."""
        if self.normalized:
            return 1.0
        return 1.0 / (self.beta0 * directivity(self.kappa))

    def with_kappa(self, kappa: float) -> "PowerParams":
        return replace(self, kappa=kappa)


@dataclass(frozen=True)
class LinkBudget:
    """Link-level constants that combine into ``beta0``."""

    bandwidth_hz: float
    bitrate_bps: float
    noise_power_w: float
    antenna_const_K: float = 1.0
    tx_gain_Gt: float = 1.0
    ref_distance_d0: float = 1.0
    shadow_sigma_db: float = 0.0

    def __post_init__(self):
        for name in ("bandwidth_hz", "bitrate_bps", "noise_power_w",
                     "antenna_const_K", "tx_gain_Gt", "ref_distance_d0"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be positive")
        if self.shadow_sigma_db < 0.0:
            raise DomainError("shadow_sigma_db must be nonnegative")

    @property
    def min_rx_power_w(self) -> float:
        """Shannon threshold (2^(Rb/B) - 1) * N0 for a reliable link."""
        ratio = self.bitrate_bps / self.bandwidth_hz
        if ratio > 1000.0:
            raise DomainError("bitrate/bandwidth ratio overflows the rate formula")
        return (2.0 ** ratio - 1.0) * self.noise_power_w


@dataclass(frozen=True)
class LosParams:
    """Parameters of the S-curve line-of-sight probability model."""

    a: float
    b: float
    beta_nlos: float

    def __post_init__(self):
        if not 0.0 < self.a < 90.0:
            raise DomainError("LoS parameter a must lie in (0, 90)")
        if self.b <= 0.0:
            raise DomainError("LoS parameter b must be positive")
        if not 0.0 < self.beta_nlos <= 1.0:
            raise DomainError("beta_nlos must lie in (0, 1]")


def directivity(kappa: float) -> float:
    """Maximal antenna directivity of the cos^kappa pattern.

    For kappa > 0 the beam solid angle of the (back-lobe free) pattern is
    2*pi/(kappa+1), giving D0 = 2*(kappa+1).  kappa = 0 is the isotropic
    antenna radiating over the full sphere, so D0(0) = 1; the jump at zero
    reflects the missing back hemisphere of the directional pattern.
    """
    if kappa < 0.0:
        raise DomainError("kappa must be >= 0")
    if kappa == 0.0:
        return 1.0
    return 2.0 * (kappa + 1.0)


def hpbw_degrees(kappa: float) -> float:
    """Half-power beamwidth 2*arccos(2^(-1/kappa)) in degrees.

    Evaluated in extended precision so the landmark widths (120 deg at
    kappa=1, 90 deg at kappa=2) come out exact in float64.
    """
    if kappa < 1.0:
        raise DomainError("hpbw is defined for kappa >= 1")
    x = np.longdouble(2.0) ** (np.longdouble(-1.0) / np.longdouble(kappa))
    return float(np.degrees(2.0 * np.arccos(x)))


def link_beta0(budget: LinkBudget, alpha: float) -> float:
    """Combined link constant K*Gt*d0^alpha*sigma_psi^2 / ((2^(Rb/B)-1)*N0).

    sigma_psi^2 is the linear-scale mean of the log-normal shadowing term,
    exp(sigma_dB^2 * ln(10)^2 / 200).
    """
    if alpha < 1.0:
        raise DomainError("alpha must be >= 1")
    sigma_psi_sq = math.exp(budget.shadow_sigma_db ** 2 * math.log(10.0) ** 2 / 200.0)
    return (budget.antenna_const_K * budget.tx_gain_Gt
            * budget.ref_distance_d0 ** alpha * sigma_psi_sq
            / budget.min_rx_power_w)


def tx_power(user, uav_ground, h: float, params: PowerParams):
    """Required transmit power of a user toward one UAV.

    ``user`` may be a single point or an (..., 2) array; the result
    broadcasts accordingly.  Raw cost is (r^2 + h^2)^gamma / h^kappa,
    scaled by 1/(beta0*D0) unless ``params.normalized``.
    """
    if h <= 0.0:
        raise DomainError("UAV height must be positive")
    user = np.asarray(user, dtype=float)
    uav_ground = np.asarray(uav_ground, dtype=float)
    d2 = np.sum((user - uav_ground) ** 2, axis=-1) + h * h
    p = d2 ** params.gamma / h ** params.kappa * params.power_scale
    return p if p.ndim else float(p)


def regularized_los(elevation_rad, p: LosParams):
    """Mixture attenuation (1 + b_n*a*e) / (1 + a*e) of LoS and NLoS paths.

    ``e`` decays exponentially in the elevation angle measured in degrees;
    the result rises from near ``beta_nlos`` at grazing angles to 1 at
    zenith.  Accepts scalars or arrays of elevation in radians.
    """
    elev = np.asarray(elevation_rad, dtype=float)
    if np.any(elev < 0.0) or np.any(elev > np.pi / 2 + 1e-12):
        raise DomainError("elevation must lie in [0, pi/2]")
    e = p.a * np.exp(-p.b * (np.degrees(elev) - p.a))
    out = (1.0 + p.beta_nlos * e) / (1.0 + e)
    return out if out.ndim else float(out)
