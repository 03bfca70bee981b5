"""Array geometry for modular XL-arrays.

The array lies in the y-z plane, centred at the origin, with boresight
along +x.  Modules are ULAs of ``M`` elements stacked along z; modules are
repeated ``Ny`` times along y (pitch ``Ky*d``) and ``Nz`` times along z
(pitch ``(M + Kz - 1)*d``).

Element indices are centred: ``n in {-(N-1)/2, ..., (N-1)/2}``.  For even
counts these are half-integers, which keeps the array symmetric about the
origin and reduces to the usual integer indexing for odd counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s

# Reference scenario: 2.38 GHz carrier, d rounded to 0.0628 m as published.
REFERENCE_FREQUENCY_HZ = 2.38e9
REFERENCE_SPACING = 0.0628


class ConfigError(ValueError):
    """Invalid array configuration, index or user location."""


def wavelength_from_frequency(freq_hz: float) -> float:
    if freq_hz <= 0:
        raise ConfigError(f"frequency must be positive, got {freq_hz}")
    return SPEED_OF_LIGHT / freq_hz


def isotropic_area(wavelength: float, efficiency: float = 1.0) -> float:
    """Physical element area giving an isotropic effective aperture lambda^2/(4 pi)."""
    return wavelength**2 / (4.0 * math.pi * efficiency)


@dataclass(frozen=True)
class ArrayConfig:
    """Modular array description.

    Attributes
    ----------
    elements_per_module : int
        Elements in each ULA module (``M``).
    modules_y, modules_z : int
        Module counts along y and z (``Ny``, ``Nz``).
    spacing_mult_y, spacing_mult_z : int
        Module separations as multiples of the element spacing
        (``Dy = Ky*d``, ``Dz = Kz*d``).  ``1, 1`` is a collocated array.
    element_spacing : float
        Inter-element spacing ``d`` in metres.
    element_area : float
        Physical area ``A`` of one element (m^2); must satisfy ``A <= d^2``.
    aperture_efficiency : float
        ``e`` in (0, 1]; the effective aperture is ``e*A``.
    wavelength : float
        Carrier wavelength in metres.
    """

    elements_per_module: int
    modules_y: int
    modules_z: int
    spacing_mult_y: int
    spacing_mult_z: int
    element_spacing: float
    element_area: float
    aperture_efficiency: float
    wavelength: float

    def __post_init__(self) -> None:
        for name in ("elements_per_module", "modules_y", "modules_z",
                     "spacing_mult_y", "spacing_mult_z"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        d = self.element_spacing
        if not (d > 0 and math.isfinite(d)):
            raise ConfigError(f"element_spacing must be positive, got {d}")
        if not (self.wavelength > 0 and math.isfinite(self.wavelength)):
            raise ConfigError(f"wavelength must be positive, got {self.wavelength}")
        if not 0 < self.aperture_efficiency <= 1:
            raise ConfigError(
                f"aperture_efficiency must lie in (0, 1], got {self.aperture_efficiency}")
        # small slack so that A = d^2 computed in floating point is accepted
        if not 0 < self.element_area <= d * d * (1 + 1e-12):
            raise ConfigError(
                f"element_area must lie in (0, d^2] = (0, {d * d:.6g}], got {self.element_area}")

    @classmethod
    def reference(cls) -> ArrayConfig:
        """The default scenario of the numerical study: M=9, 64x64 modules,
        D = 10d, d = 0.0628 m, 2.38 GHz, isotropic elements with e = 1."""
        lam = wavelength_from_frequency(REFERENCE_FREQUENCY_HZ)
        return cls(
            elements_per_module=9,
            modules_y=64,
            modules_z=64,
            spacing_mult_y=10,
            spacing_mult_z=10,
            element_spacing=REFERENCE_SPACING,
            element_area=isotropic_area(lam),
            aperture_efficiency=1.0,
            wavelength=lam,
        )

    def with_(self, **changes) -> ArrayConfig:
        return replace(self, **changes)

    @property
    def total_elements(self) -> int:
        return self.modules_y * self.modules_z * self.elements_per_module

    @property
    def effective_area(self) -> float:
        return self.aperture_efficiency * self.element_area

    @property
    def is_collocated(self) -> bool:
        return self.spacing_mult_y == 1 and self.spacing_mult_z == 1


@dataclass(frozen=True)
class DerivedGeometry:
    """Lengths derived from an :class:`ArrayConfig` (all in metres).

    ``Lt_*`` are the augmented sizes that appear in the closed-form SNR
    (``Lt_y = Ky Ny d``, ``Lt_z = (K Nz + M) d``, ``Lt_e = M d``) and
    ``Lh_z = Lt_z - 2 Lt_e``.
    """

    K: int
    D_y: float
    D_z: float
    L_y: float
    L_z: float
    L_e: float
    Lt_y: float
    Lt_z: float
    Lt_e: float
    Lh_z: float
    xi: float
    A_e: float
    N: int


def derive_geometry(cfg: ArrayConfig) -> DerivedGeometry:
    M, Ny, Nz = cfg.elements_per_module, cfg.modules_y, cfg.modules_z
    Ky, Kz, d = cfg.spacing_mult_y, cfg.spacing_mult_z, cfg.element_spacing
    K = M + Kz - 1
    Lt_z = (K * Nz + M) * d
    Lt_e = M * d
    return DerivedGeometry(
        K=K,
        D_y=Ky * d,
        D_z=Kz * d,
        L_y=Ky * (Ny - 1) * d,
        L_z=(K * (Nz - 1) + (M - 1)) * d,
        L_e=(M - 1) * d,
        Lt_y=Ky * Ny * d,
        Lt_z=Lt_z,
        Lt_e=Lt_e,
        Lh_z=Lt_z - 2 * Lt_e,
        xi=cfg.element_area / d**2,
        A_e=cfg.effective_area,
        N=Ny * Nz,
    )


class ElementIndex(NamedTuple):
    """Centred element index; half-integer components occur for even counts."""

    n_y: float
    n_z: float
    m: float


def centred_indices(count: int) -> np.ndarray:
    """``[-(count-1)/2, ..., (count-1)/2]`` with unit step."""
    return np.arange(count, dtype=float) - (count - 1) / 2.0


def _check_component(value: float, count: int, name: str) -> None:
    offset = value + (count - 1) / 2.0
    if not (offset == round(offset) and 0 <= offset <= count - 1):
        half = (count - 1) / 2
        raise ConfigError(f"{name}={value} is not a valid centred index in [-{half:g}, {half:g}]")


def check_index(cfg: ArrayConfig, idx: ElementIndex) -> None:
    _check_component(idx.n_y, cfg.modules_y, "n_y")
    _check_component(idx.n_z, cfg.modules_z, "n_z")
    _check_component(idx.m, cfg.elements_per_module, "m")


def element_position(cfg: ArrayConfig, idx: ElementIndex) -> np.ndarray:
    """Centre ``[0, n_y Ky d, (K n_z + m) d]`` of element ``idx``."""
    check_index(cfg, idx)
    d = cfg.element_spacing
    K = cfg.elements_per_module + cfg.spacing_mult_z - 1
    return np.array([0.0, idx.n_y * cfg.spacing_mult_y * d, (K * idx.n_z + idx.m) * d])


def element_coordinates(cfg: ArrayConfig) -> tuple[np.ndarray, np.ndarray]:
    """All element centres as ``(y, z)``.

    ``y`` has shape ``(Ny,)``; ``z`` has shape ``(Nz, M)`` with the module
    index first, so ``(y[i], z[j, k])`` is element ``(n_y, n_z, m)`` in
    lexicographic order.
    """
    d = cfg.element_spacing
    K = cfg.elements_per_module + cfg.spacing_mult_z - 1
    y = centred_indices(cfg.modules_y) * cfg.spacing_mult_y * d
    z = (K * centred_indices(cfg.modules_z)[:, None]
         + centred_indices(cfg.elements_per_module)[None, :]) * d
    return y, z


def _sin(angle: float) -> float:
    # exact zero at 0 and pi so that the projected aperture vanishes there
    return 0.0 if angle in (0.0, math.pi) else math.sin(angle)


def _cos(angle: float) -> float:
    return 0.0 if abs(angle) == math.pi / 2 else math.cos(angle)


@dataclass(frozen=True)
class UserLocation:
    """User position in spherical coordinates about the array centre.

    ``theta`` is the zenith angle from +z in [0, pi]; ``phi`` the azimuth
    from +x in [-pi/2, pi/2], so the user is always in front of the array.
    The direction cosines are ``cos_x = sin(theta) cos(phi)``,
    ``cos_y = sin(theta) sin(phi)`` and ``cos_z = cos(theta)``.
    """

    r: float
    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (self.r > 0 and math.isfinite(self.r)):
            raise ConfigError(f"distance r must be positive, got {self.r}")
        if not 0 <= self.theta <= math.pi:
            raise ConfigError(f"zenith angle theta must lie in [0, pi], got {self.theta}")
        if not -math.pi / 2 <= self.phi <= math.pi / 2:
            raise ConfigError(f"azimuth phi must lie in [-pi/2, pi/2], got {self.phi}")

    @classmethod
    def from_degrees(cls, r: float, theta_deg: float, phi_deg: float) -> UserLocation:
        return cls(r, math.radians(theta_deg), math.radians(phi_deg))

    @property
    def cos_x(self) -> float:
        return _sin(self.theta) * _cos(self.phi)

    @property
    def cos_y(self) -> float:
        return _sin(self.theta) * math.sin(self.phi)

    @property
    def cos_z(self) -> float:
        return _cos(self.theta)

    @property
    def position(self) -> np.ndarray:
        return self.r * np.array([self.cos_x, self.cos_y, self.cos_z])

    def with_(self, **changes) -> UserLocation:
        return replace(self, **changes)


def element_distance(cfg: ArrayConfig, loc: UserLocation, idx: ElementIndex) -> float:
    """Exact Euclidean distance from the user to element ``idx``."""
    return float(np.linalg.norm(loc.position - element_position(cfg, idx)))
