"""Non-uniform spherical wave (NUSW) channel and exact beamforming SNR.

Every element sees its own distance, free-space loss and projected
aperture.  The exact MRC SNR is the plain sum over all elements and serves
as the reference for every closed-form expression in :mod:`modxl.closedform`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    ArrayConfig,
    ConfigError,
    ElementIndex,
    UserLocation,
    element_coordinates,
    element_distance,
    element_position,
)

UNIT_NORM_TOL = 1e-12


@dataclass(frozen=True)
class LinkBudget:
    """Transmit SNR ``P/sigma^2`` (linear) and optional 1 m reference gain.

    When ``reference_gain`` is ``None`` the isotropic value
    ``(lambda / 4 pi)^2`` of the array's wavelength is used.
    """

    transmit_snr: float
    reference_gain: float | None = None

    def __post_init__(self) -> None:
        if not (self.transmit_snr > 0 and math.isfinite(self.transmit_snr)):
            raise ConfigError(f"transmit SNR must be positive, got {self.transmit_snr}")
        if self.reference_gain is not None and not self.reference_gain > 0:
            raise ConfigError(f"reference gain must be positive, got {self.reference_gain}")

    @classmethod
    def from_db(cls, transmit_snr_db: float, reference_gain: float | None = None) -> LinkBudget:
        return cls(10.0 ** (transmit_snr_db / 10.0), reference_gain)

    @classmethod
    def reference(cls) -> LinkBudget:
        return cls.from_db(90.0)

    def beta0(self, wavelength: float) -> float:
        if self.reference_gain is not None:
            return self.reference_gain
        return (wavelength / (4.0 * math.pi)) ** 2


def element_gain(cfg: ArrayConfig, loc: UserLocation, idx: ElementIndex) -> float:
    """Channel power gain of one element, point-element approximation.

    ``e A r cos_x / (4 pi |q - w|^3)``: free-space loss times the projected
    effective aperture.  Exactly zero when the user lies in the array plane.
    """
    dist = element_distance(cfg, loc, idx)
    return cfg.effective_area * loc.r * loc.cos_x / (4.0 * math.pi * dist**3)


def element_gain_integrated(cfg: ArrayConfig, loc: UserLocation, idx: ElementIndex,
                            quad_points: int) -> float:
    """Channel power gain integrated over the square element face.

    Tensor-product midpoint rule with ``quad_points`` nodes per side on the
    ``sqrt(A) x sqrt(A)`` face, scaled by the aperture efficiency.  One node
    reproduces :func:`element_gain`.
    """
    if int(quad_points) != quad_points or quad_points < 1:
        raise ConfigError(f"quad_points must be a positive integer, got {quad_points}")
    n = int(quad_points)
    centre = element_position(cfg, idx)
    side = math.sqrt(cfg.element_area)
    nodes = (np.arange(n) + 0.5) / n * side - side / 2.0
    q = loc.position
    dx = q[0]
    dy = q[1] - (centre[1] + nodes)[:, None]
    dz = q[2] - (centre[2] + nodes)[None, :]
    dist = np.sqrt(dx * dx + dy * dy + dz * dz)
    integrand = dx / (4.0 * math.pi * dist**3)
    cell = (side / n) ** 2
    return cfg.aperture_efficiency * float(integrand.sum()) * cell


def _squared_distances(cfg: ArrayConfig, loc: UserLocation) -> np.ndarray:
    """``|q - w|^2`` for every element, shape ``(Ny, Nz, M)``."""
    y, z = element_coordinates(cfg)
    qx, qy, qz = loc.position
    return qx * qx + ((qy - y) ** 2)[:, None, None] + ((qz - z) ** 2)[None, :, :]


def response_vector(cfg: ArrayConfig, loc: UserLocation) -> np.ndarray:
    """Complex array response, shape ``(Ny, Nz, M)`` in index order.

    Entry ``(n_y, n_z, m)`` is ``sqrt(g) exp(-j 2 pi r_nm / lambda)``.
    """
    dist = np.sqrt(_squared_distances(cfg, loc))
    gain = cfg.effective_area * loc.r * loc.cos_x / (4.0 * math.pi * dist**3)
    phase = np.exp(-2j * math.pi * dist / cfg.wavelength)
    return np.sqrt(gain) * phase


def check_beamformer(v: np.ndarray, size: int) -> np.ndarray:
    """Flatten ``v`` and verify it has ``size`` entries and unit norm."""
    v = np.asarray(v, dtype=complex).ravel()
    if v.size != size:
        raise ConfigError(f"beamformer has {v.size} weights, array has {size} elements")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise ConfigError(f"beamformer must have unit norm, got {norm:.15g}")
    return v


def snr_beamformed(cfg: ArrayConfig, loc: UserLocation, v: np.ndarray,
                   budget: LinkBudget) -> float:
    """Received SNR ``P |v^H a|^2`` for a unit-norm receive beamformer."""
    a = response_vector(cfg, loc).ravel()
    v = check_beamformer(v, a.size)
    return budget.transmit_snr * abs(np.vdot(v, a)) ** 2


def mrc_beamformer(cfg: ArrayConfig, loc: UserLocation) -> np.ndarray:
    a = response_vector(cfg, loc).ravel()
    return a / np.linalg.norm(a)


def snr_mrc_exact(cfg: ArrayConfig, loc: UserLocation, budget: LinkBudget) -> float:
    """Maximum (MRC) SNR by summing over every element.

    ``P e A cos_x / (4 pi r^2) * sum (r / r_nm)^3``.  Each y-row of modules
    is summed with :func:`math.fsum` and the row sums are combined the same
    way in index order, so the result does not depend on how the work is
    partitioned.
    """
    psi = loc.cos_x
    if psi == 0.0:
        return 0.0
    r = loc.r
    y, z = element_coordinates(cfg)
    qx, qy, qz = loc.position
    dz2 = ((qz - z) ** 2).ravel()
    rows = []
    for yy in y:
        d2 = (qx * qx + (qy - yy) ** 2) + dz2
        rows.append(math.fsum(((r * r) / d2) ** 1.5))
    total = math.fsum(rows)
    return budget.transmit_snr * cfg.effective_area * psi / (4.0 * math.pi * r * r) * total
