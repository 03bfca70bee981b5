"""Closed-form MRC SNR and its special cases.

All expressions come from replacing the element sum by an integral over the
array aperture, which is accurate while the element spacing is small
compared with the link distance.  Each function has a summation-based
counterpart in :mod:`modxl.channel` that the test suite checks it against.
"""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass
from typing import NamedTuple

import mpmath

from .channel import LinkBudget, snr_mrc_exact
from .geometry import ArrayConfig, ConfigError, UserLocation, derive_geometry

# Below this projection the kernels divide by ~0; the physical SNR is ~0 there.
PSI_MIN = 1e-6
# d/r above which the integral approximation is flagged as unreliable.
EPS_MAX = 0.05
# Agreement required between the two algebraically equal evaluation paths.
DUAL_PATH_RTOL = 1e-10
# Cancellation ratio above which the planar sum is redone in extended precision.
_CANCELLATION_LIMIT = 1e4
_ANGULAR_CONDITION_LIMIT = 1e2
_EPS = sys.float_info.epsilon


class DomainError(ValueError):
    """Inputs outside the domain where a closed-form expression is defined."""


class ModelTag(enum.Enum):
    NUSW_SUM = "nusw-sum"
    NUSW_CLOSED = "nusw-closed"
    BORESIGHT = "boresight"
    COLLOCATED = "collocated"
    LIMIT_NZ = "limit-nz"
    LIMIT_NY = "limit-ny"
    LIMIT_BOTH = "limit-both"
    LIMIT_ISOTROPIC = "limit-isotropic"
    UPW_PROJECTED = "upw-projected"
    UPW_CONVENTIONAL = "upw-conventional"
    ULA_CLOSED = "ula-closed"
    ULA_LIMIT = "ula-limit"
    ULA_UPW = "ula-upw"


class LimitCase(enum.Enum):
    NZ_INF = "nz"
    NY_INF = "ny"
    BOTH_INF = "both"


@dataclass(frozen=True)
class SnrValue:
    """A linear SNR tagged with the model that produced it.

    ``warning`` is set when the inputs are outside the range where the
    model is expected to be accurate; the value is still returned.
    """

    linear: float
    model: ModelTag
    warning: str | None = None

    @property
    def db(self) -> float:
        if self.linear < 0:
            raise ValueError("negative SNR has no dB value")
        return 10.0 * math.log10(self.linear) if self.linear > 0 else -math.inf


@dataclass(frozen=True)
class AngularGeometry:
    """Angles subtended by the array edges at the user (radians).

    The boresight form fills ``eta1, eta2`` (horizontal spans) and
    ``beta1, beta2`` (vertical spans); the linear-array form fills
    ``alpha1..alpha4`` and the sums/differences ``delta_s*``/``delta_d*``.
    """

    eta1: float | None = None
    eta2: float | None = None
    beta1: float | None = None
    beta2: float | None = None
    alpha1: float | None = None
    alpha2: float | None = None
    alpha3: float | None = None
    alpha4: float | None = None
    delta_s1: float | None = None
    delta_d1: float | None = None
    delta_s2: float | None = None
    delta_d2: float | None = None


def asinh_stable(x: float) -> float:
    """``asinh`` via ``log1p``, accurate for tiny arguments and odd-symmetric."""
    ax = abs(x)
    if ax > 1e8:
        val = math.log(2.0 * ax)
    else:
        val = math.log1p(ax + ax * ax / (1.0 + math.sqrt(1.0 + ax * ax)))
    return math.copysign(val, x)


def f_kernel(x: float, y: float, psi: float) -> float:
    """Planar-array kernel ``asinh(x/sqrt(psi^2+y^2)) + (y/psi) atan(x y / (psi sqrt(psi^2+x^2+y^2)))``."""
    if not psi > PSI_MIN:
        raise DomainError(f"projection cos_x={psi:.3g} is below the minimum {PSI_MIN:g}")
    p2 = psi * psi
    return (asinh_stable(x / math.sqrt(p2 + y * y))
            + (y / psi) * math.atan(x * y / (psi * math.sqrt(p2 + x * x + y * y))))


def f_kernel_difference(x: float, y1: float, gap: float, psi: float) -> float:
    """``f_kernel(x, y1 + gap, psi) - f_kernel(x, y1, psi)`` without cancellation.

    The planar form subtracts kernels whose second arguments differ by only
    a few element spacings over the distance, which loses most significant
    digits in double precision.  Both pieces of the kernel are differenced
    analytically instead: ``asinh a - asinh b = asinh(a sqrt(1+b^2) -
    b sqrt(1+a^2))`` and ``atan u - atan v = atan2(u - v, 1 + u v)``, with the
    square-root differences rewritten so that ``gap`` enters as a factor.
    """
    if not psi > PSI_MIN:
        raise DomainError(f"projection cos_x={psi:.3g} is below the minimum {PSI_MIN:g}")
    y2 = y1 + gap
    p2, x2 = psi * psi, x * x
    t1, t2 = math.sqrt(p2 + y1 * y1), math.sqrt(p2 + y2 * y2)
    s1, s2 = math.sqrt(p2 + x2 + y1 * y1), math.sqrt(p2 + x2 + y2 * y2)
    ysum = y1 + y2
    # s2 - s1 and y2 s1 - y1 s2, each proportional to gap
    ds = gap * ysum / (s1 + s2)
    if y1 * y2 > 0:
        cross = (p2 + x2) * gap * ysum / (y2 * s1 + y1 * s2)
    else:  # opposite signs: the two products add, nothing cancels
        cross = y2 * s1 - y1 * s2
    asinh_part = asinh_stable(-x * ds / (t1 * t2))
    u1, u2 = x * y1 / (psi * s1), x * y2 / (psi * s2)
    atan_diff = math.atan2(x * cross / (psi * s1 * s2), 1.0 + u1 * u2)
    atan_part = (gap / psi) * math.atan(u2) + (y1 / psi) * atan_diff
    return asinh_part + atan_part


def _kernel_difference_sum_mp(args: list[tuple[float, float]], gap: float, psi: float) -> float:
    """Sum of kernel differences in extended precision.

    Used when the four differences cancel to a tiny remainder, which
    happens for small arrays seen from well off to the side.  A private
    context keeps the working precision local to this call.
    """
    ctx = mpmath.MPContext()
    ctx.dps = 40
    p = ctx.mpf(psi)
    p2 = p * p

    def kernel(x, y):
        return ctx.asinh(x / ctx.sqrt(p2 + y * y)) + (y / p) * ctx.atan(
            x * y / (p * ctx.sqrt(p2 + x * x + y * y)))

    total = ctx.mpf(0)
    for x, y in args:
        xm, ym = ctx.mpf(x), ctx.mpf(y)
        total += kernel(xm, ym + ctx.mpf(gap)) - kernel(xm, ym)
    return float(total)


def _secant_span_mp(rs: float, rc: float, hi: float, ho: float) -> float:
    """``sec a3 - sec a1 + sec a4 - sec a2`` for the linear-array edge angles, in extended precision."""
    ctx = mpmath.MPContext()
    ctx.dps = 40
    rs, rc, hi, ho = ctx.mpf(rs), ctx.mpf(rc), ctx.mpf(hi), ctx.mpf(ho)

    def sec_of_edge(offset):
        return ctx.sec(ctx.atan(offset / rs))

    return float(sec_of_edge(ho - rc) - sec_of_edge(hi - rc) + sec_of_edge(ho + rc) - sec_of_edge(hi + rc))


def _collocated_kernel(x: float, y: float, psi: float) -> float:
    return math.atan(x * y / (psi * math.sqrt(psi * psi + x * x + y * y)))


def _require_psi(loc: UserLocation) -> float:
    psi = loc.cos_x
    if psi < PSI_MIN:
        raise DomainError(
            f"user is (nearly) in the array plane: cos_x={psi:.3g} < {PSI_MIN:g}; "
            "use the exact sum instead")
    return psi


def _validity(cfg: ArrayConfig, r: float) -> str | None:
    ratio = cfg.element_spacing / r
    if ratio > EPS_MAX:
        return (f"d/r = {ratio:.3g} exceeds {EPS_MAX:g}; the integral approximation "
                "behind the closed form may be inaccurate")
    return None


def _finite(value: float, what: str) -> float:
    if not math.isfinite(value):
        raise DomainError(f"{what} evaluated to a non-finite value")
    return value


def _check_paths(paths: DualPath, what: str) -> None:
    a, b = paths.kernel, paths.angular
    if abs(a - b) > max(DUAL_PATH_RTOL, 16.0 * paths.rounding) * max(abs(a), abs(b)):
        raise ArithmeticError(f"{what}: evaluation paths disagree ({a!r} vs {b!r})")


def _module_pitch_area(cfg: ArrayConfig) -> float:
    """``Dy [Dz + (M-1) d]``: area per module on the array plane."""
    g = derive_geometry(cfg)
    return g.D_y * (g.D_z + (cfg.elements_per_module - 1) * cfg.element_spacing)


def snr_closed(cfg: ArrayConfig, loc: UserLocation, budget: LinkBudget) -> SnrValue:
    """Closed-form maximum SNR of the planar modular array.

    Eight signed kernel terms evaluated at the array edges relative to the
    user's projections ``r cos_y`` and ``r cos_z``.
    """
    psi = _require_psi(loc)
    g = derive_geometry(cfg)
    r, cy, cz = loc.r, loc.cos_y, loc.cos_z
    pre = (cfg.aperture_efficiency * g.xi * budget.transmit_snr * cfg.element_spacing * r * psi
           / (4.0 * math.pi * _module_pitch_area(cfg)))
    # outer minus inner kernel pairs, whose second arguments differ by Lt_e / r
    gap = g.Lt_e / r
    args = [(g.Lt_y / (2 * r) + sy * cy, g.Lh_z / (2 * r) + sz * cz) for sy in (-1.0, 1.0)
            for sz in (-1.0, 1.0)]
    terms = [f_kernel_difference(x, y, gap, psi) for x, y in args]
    total = math.fsum(terms)
    if sum(abs(t) for t in terms) > _CANCELLATION_LIMIT * abs(total):
        total = _kernel_difference_sum_mp(args, gap, psi)
    value = _finite(pre * total, "closed-form SNR")
    return SnrValue(max(value, 0.0), ModelTag.NUSW_CLOSED, _validity(cfg, r))


class DualPath(NamedTuple):
    """Both evaluations of an SNR that has an angular form.

    ``rounding`` estimates the relative floating-point error the paths may
    legitimately carry.  It is negligible except where the result is a
    small remainder of much larger terms (users close to the array axis).
    """

    kernel: float
    angular: float
    rounding: float
    angles: AngularGeometry


def _ray_angle(u1: float, v1: float, u2: float, v2: float, cross: float) -> float:
    """Angle from ray ``(u1, v1)`` to ray ``(u2, v2)``; ``cross`` is their 2-D cross product.

    Callers pass ``cross`` already reduced to a product with the edge
    separation, so small angles keep full relative precision.
    """
    return math.atan2(cross, u1 * u2 + v1 * v2)


def boresight_paths(cfg: ArrayConfig, r: float, budget: LinkBudget) -> DualPath:
    if not r > 0:
        raise ConfigError(f"distance r must be positive, got {r}")
    g = derive_geometry(cfg)
    pre = (cfg.aperture_efficiency * g.xi * budget.transmit_snr * cfg.element_spacing * r
           / (math.pi * _module_pitch_area(cfg)))
    # inner and outer vertical edges are Lt_e apart; F1 is the kernel at unit projection
    kernel_path = pre * f_kernel_difference(g.Lt_y / (2 * r), g.Lh_z / (2 * r), g.Lt_e / r, 1.0)

    hy, hi, ho = g.Lt_y / 2, g.Lh_z / 2, g.Lt_z / 2
    rho_i, rho_o = math.hypot(r, hi), math.hypot(r, ho)
    eta1, eta2 = math.atan(hy / rho_i), math.atan(hy / rho_o)
    beta1, beta2 = math.atan(hi / r), math.atan(ho / r)
    # angles subtended by the strip between the inner and outer edges
    d_rho = g.Lt_e * (hi + ho) / (rho_i + rho_o)
    d_eta = _ray_angle(rho_o, hy, rho_i, hy, hy * d_rho)          # eta1 - eta2
    d_beta = _ray_angle(r, hi, r, ho, r * g.Lt_e)                  # beta2 - beta1
    tb1, tb2 = math.tan(beta1), math.tan(beta2)
    s1, s2 = math.sin(eta1), math.sin(eta2)
    d_sin_eta = -2.0 * math.cos((eta1 + eta2) / 2) * math.sin(d_eta / 2)
    # asinh(tan eta2) - asinh(tan eta1) = asinh((sin eta2 - sin eta1) / (cos eta1 cos eta2))
    span_eta = asinh_stable(d_sin_eta / (math.cos(eta1) * math.cos(eta2)))
    d_tan_beta = math.sin(d_beta) / (math.cos(beta1) * math.cos(beta2))
    c1, c2 = tb1 * s1, tb2 * s2
    d_corner = math.atan2(d_tan_beta * s2 + tb1 * d_sin_eta, 1.0 + c1 * c2)
    span_beta = d_tan_beta * math.atan(c2) + tb1 * d_corner
    angle_path = pre * (span_eta + span_beta)
    # edge angles near pi/2 (arrays far larger than the distance) carry
    # rounding amplified by their secant
    total = abs(span_eta + span_beta)
    min_cos = min(math.cos(a) for a in (eta1, eta2, beta1, beta2))
    rounding = (_EPS * (abs(span_eta) + abs(span_beta)) / (total * min_cos)
                if total > 0 and min_cos > 0 else math.inf)
    angles = AngularGeometry(eta1=eta1, eta2=eta2, beta1=beta1, beta2=beta2)
    return DualPath(kernel_path, angle_path, rounding, angles)


def snr_boresight(cfg: ArrayConfig, r: float, budget: LinkBudget) -> tuple[SnrValue, AngularGeometry]:
    """Closed-form SNR for a user on the boresight axis at distance ``r``.

    Evaluated both from the kernel form and from the horizontal/vertical
    angular spans; the two must agree.
    """
    paths = boresight_paths(cfg, r, budget)
    _check_paths(paths, "boresight SNR")
    value = _finite(paths.kernel, "boresight SNR")
    return SnrValue(max(value, 0.0), ModelTag.BORESIGHT, _validity(cfg, r)), paths.angles


def snr_collocated(cfg: ArrayConfig, loc: UserLocation, budget: LinkBudget) -> SnrValue:
    """Closed-form SNR of a collocated planar array (``Ky = Kz = 1``)."""
    if not cfg.is_collocated:
        raise DomainError(
            f"collocated form needs Ky = Kz = 1, got Ky={cfg.spacing_mult_y}, Kz={cfg.spacing_mult_z}")
    psi = _require_psi(loc)
    M, d, r = cfg.elements_per_module, cfg.element_spacing, loc.r
    xi = cfg.element_area / d**2
    half_y = cfg.modules_y * d / (2 * r)
    half_z = cfg.modules_z * M * d / (2 * r)
    terms = [_collocated_kernel(half_y + sy * loc.cos_y, half_z + sz * loc.cos_z, psi)
             for sy in (-1.0, 1.0) for sz in (-1.0, 1.0)]
    value = cfg.aperture_efficiency * xi * budget.transmit_snr / (4.0 * math.pi) * math.fsum(terms)
    return SnrValue(max(_finite(value, "collocated SNR"), 0.0), ModelTag.COLLOCATED,
                    _validity(cfg, r))


def snr_limit(cfg: ArrayConfig, loc: UserLocation | None, budget: LinkBudget,
              case: LimitCase) -> SnrValue:
    """Asymptotic SNR as the module count grows without bound.

    ``NZ_INF`` and ``NY_INF`` grow one dimension and keep the other at its
    configured value; ``BOTH_INF`` grows both and does not depend on the
    user location (``loc`` may be ``None``).
    """
    g = derive_geometry(cfg)
    per_module = budget.transmit_snr * cfg.elements_per_module * cfg.effective_area
    pitch = _module_pitch_area(cfg)
    if case is LimitCase.BOTH_INF:
        return SnrValue(per_module / (2.0 * pitch), ModelTag.LIMIT_BOTH)
    if loc is None:
        raise ConfigError(f"limit case {case.value!r} needs a user location")
    psi = _require_psi(loc)
    r, cy, cz = loc.r, loc.cos_y, loc.cos_z
    two_r_psi = 2 * r * psi
    if case is LimitCase.NZ_INF:
        bracket = (math.atan((g.Lt_y - 2 * r * cy) / two_r_psi)
                   + math.atan((g.Lt_y + 2 * r * cy) / two_r_psi))
        value = per_module / (2.0 * math.pi * pitch) * bracket
        return SnrValue(_finite(value, "N_z limit"), ModelTag.LIMIT_NZ)
    bracket = (math.atan((g.Lt_z - 2 * r * cz) / two_r_psi)
               + math.atan((g.Lt_z + 2 * r * cz) / two_r_psi))
    edge = g.Lt_z - g.Lt_e
    correction = (g.Lt_e / ((edge - 2 * r * cz) ** 2 + two_r_psi**2)
                  + g.Lt_e / ((edge + 2 * r * cz) ** 2 + two_r_psi**2))
    value = (per_module / (2.0 * math.pi * pitch) * bracket
             - per_module * r * psi / (math.pi * pitch) * correction)
    return SnrValue(_finite(value, "N_y limit"), ModelTag.LIMIT_NY)


def collocated_modular_ratio(cfg: ArrayConfig) -> float:
    """Ratio of the collocated to the modular asymptotic SNR, ``Ky (Kz + M - 1) / M``."""
    M = cfg.elements_per_module
    return cfg.spacing_mult_y * (cfg.spacing_mult_z + M - 1) / M


def snr_limit_collocated(cfg: ArrayConfig, budget: LinkBudget) -> SnrValue:
    """Asymptotic SNR of a collocated array with the same elements, ``P e A / (2 d^2)``."""
    value = budget.transmit_snr * cfg.effective_area / (2.0 * cfg.element_spacing**2)
    return SnrValue(value, ModelTag.LIMIT_BOTH)


def snr_limit_isotropic(cfg: ArrayConfig, budget: LinkBudget) -> SnrValue:
    """Asymptotic SNR for isotropic elements at half-wavelength spacing."""
    M = cfg.elements_per_module
    value = budget.transmit_snr * M / (
        2.0 * math.pi * cfg.spacing_mult_y * (cfg.spacing_mult_z + M - 1))
    return SnrValue(value, ModelTag.LIMIT_ISOTROPIC)


def snr_upw(cfg: ArrayConfig, loc: UserLocation, budget: LinkBudget) -> SnrValue:
    """Far-field SNR accounting for the projected aperture of the whole array."""
    value = (budget.transmit_snr * cfg.total_elements * cfg.effective_area * loc.cos_x
             / (4.0 * math.pi * loc.r**2))
    return SnrValue(value, ModelTag.UPW_PROJECTED)


def snr_upw_conventional(cfg: ArrayConfig, loc: UserLocation, budget: LinkBudget) -> SnrValue:
    """Far-field SNR with a direction-independent reference gain ``beta0``."""
    value = budget.transmit_snr * cfg.total_elements * budget.beta0(cfg.wavelength) / loc.r**2
    return SnrValue(value, ModelTag.UPW_CONVENTIONAL)


def _require_ula(cfg: ArrayConfig) -> None:
    if cfg.modules_y != 1 or cfg.spacing_mult_y != 1:
        raise DomainError(
            f"linear-array form needs Ny = Ky = 1, got Ny={cfg.modules_y}, Ky={cfg.spacing_mult_y}")


def _require_off_axis(loc: UserLocation) -> float:
    if loc.theta <= 0.0 or loc.theta >= math.pi:
        raise DomainError(f"zenith angle must lie strictly inside (0, pi), got {loc.theta}")
    return math.sin(loc.theta)


def ula_paths(cfg: ArrayConfig, loc: UserLocation, budget: LinkBudget) -> DualPath:
    _require_ula(cfg)
    sin_t = _require_off_axis(loc)
    g = derive_geometry(cfg)
    r, cz = loc.r, loc.cos_z
    cos_p = math.cos(loc.phi) if abs(loc.phi) != math.pi / 2 else 0.0
    stride = g.D_z + (cfg.elements_per_module - 1) * cfg.element_spacing
    scale = cfg.aperture_efficiency * g.xi * budget.transmit_snr * cfg.element_spacing * cos_p / (
        4.0 * math.pi * stride)
    gap = g.Lt_e / r

    def edge_difference(x_inner: float) -> float:
        # H(x + gap) - H(x) with H(x) = sqrt(sin^2 theta + x^2)
        h_in, h_out = math.hypot(sin_t, x_inner), math.hypot(sin_t, x_inner + gap)
        return gap * (2 * x_inner + gap) / (h_in + h_out)

    inner = g.Lh_z / (2 * r)
    pieces = (edge_difference(inner - cz), edge_difference(inner + cz))
    kernel_path = scale / sin_t * math.fsum(pieces)

    rs, rc = r * sin_t, r * cz
    hi, ho = g.Lh_z / 2, g.Lt_z / 2
    a1 = math.atan((hi - rc) / rs)
    a2 = math.atan((hi + rc) / rs)
    a3 = math.atan((ho - rc) / rs)
    a4 = math.atan((ho + rc) / rs)
    ds1, dd1, ds2, dd2 = a1 + a2, a2 - a1, a3 + a4, a4 - a3

    def sec_difference(lo: float, hi_angle: float, sep: float) -> float:
        # sec(hi) - sec(lo) for two angles sep = hi - lo apart
        return (2.0 * math.sin((lo + hi_angle) / 2) * math.sin(sep / 2)
                / (math.cos(lo) * math.cos(hi_angle)))

    # cos(s)/2 cos(d)/2 / (cos s + cos d) = (sec a + sec b) / 4 for s = a + b, d = b - a,
    # so the span difference is a sum of secant differences across each edge pair
    sep_minus = _ray_angle(rs, hi - rc, rs, ho - rc, rs * g.Lt_e)
    sep_plus = _ray_angle(rs, hi + rc, rs, ho + rc, rs * g.Lt_e)
    sec_pieces = (sec_difference(a1, a3, sep_minus), sec_difference(a2, a4, sep_plus))
    sec_total = math.fsum(sec_pieces)
    # the two sides have opposite signs when the user looks along the array;
    # the edge-angle rounding, amplified by sec(alpha), then survives the
    # cancellation, so that case is redone in extended precision
    min_cos = min(math.cos(a) for a in (a1, a2, a3, a4))
    sec_spread = abs(sec_pieces[0]) + abs(sec_pieces[1])
    if not sec_spread <= _ANGULAR_CONDITION_LIMIT * abs(sec_total) * min_cos:
        sec_total = _secant_span_mp(rs, rc, hi, ho)
    angle_path = scale * sec_total
    # near the axis both sides cancel to O(sin^2 theta) and the edge angles
    # approach +-pi/2, where their rounding is amplified by sec(alpha)
    total = abs(math.fsum(pieces))
    rounding = (_EPS * (abs(pieces[0]) + abs(pieces[1])) / (total * min_cos)
                if total > 0 and min_cos > 0 else math.inf)
    angles = AngularGeometry(alpha1=a1, alpha2=a2, alpha3=a3, alpha4=a4,
                             delta_s1=ds1, delta_d1=dd1, delta_s2=ds2, delta_d2=dd2)
    return DualPath(kernel_path, angle_path, rounding, angles)


def snr_ula_closed(cfg: ArrayConfig, loc: UserLocation,
                   budget: LinkBudget) -> tuple[SnrValue, AngularGeometry]:
    """Closed-form SNR of a single column of modules (modular XL-ULA).

    Computed from the edge-distance kernel ``sqrt(sin^2 theta + x^2)`` and,
    independently, from the angular spans and differences; the two must
    agree.
    """
    paths = ula_paths(cfg, loc, budget)
    _check_paths(paths, "linear-array SNR")
    value = _finite(paths.kernel, "linear-array SNR")
    return SnrValue(max(value, 0.0), ModelTag.ULA_CLOSED, _validity(cfg, loc.r)), paths.angles


def snr_ula_limit(cfg: ArrayConfig, loc: UserLocation, budget: LinkBudget) -> SnrValue:
    """Asymptotic linear-array SNR as the number of modules grows."""
    _require_ula(cfg)
    sin_t = _require_off_axis(loc)
    cos_p = math.cos(loc.phi) if abs(loc.phi) != math.pi / 2 else 0.0
    stride = cfg.spacing_mult_z * cfg.element_spacing + (cfg.elements_per_module - 1) * cfg.element_spacing
    value = (budget.transmit_snr * cos_p * cfg.elements_per_module * cfg.effective_area
             / (2.0 * math.pi * stride * loc.r * sin_t))
    return SnrValue(value, ModelTag.ULA_LIMIT)


def snr_ula_upw(cfg: ArrayConfig, loc: UserLocation, budget: LinkBudget) -> SnrValue:
    """Far-field linear-array SNR with projected aperture."""
    _require_ula(cfg)
    value = (budget.transmit_snr * cfg.modules_z * cfg.elements_per_module * cfg.effective_area
             * loc.cos_x / (4.0 * math.pi * loc.r**2))
    return SnrValue(value, ModelTag.ULA_UPW)


def evaluate(model: ModelTag, cfg: ArrayConfig, loc: UserLocation, budget: LinkBudget) -> SnrValue:
    """Evaluate any model by tag.

    Raises :class:`DomainError` (or :class:`ConfigError`) when the inputs
    violate that model's preconditions.
    """
    if model is ModelTag.NUSW_SUM:
        return SnrValue(snr_mrc_exact(cfg, loc, budget), model)
    if model is ModelTag.NUSW_CLOSED:
        return snr_closed(cfg, loc, budget)
    if model is ModelTag.BORESIGHT:
        return snr_boresight(cfg, loc.r, budget)[0]
    if model is ModelTag.COLLOCATED:
        return snr_collocated(cfg, loc, budget)
    if model is ModelTag.LIMIT_NZ:
        return snr_limit(cfg, loc, budget, LimitCase.NZ_INF)
    if model is ModelTag.LIMIT_NY:
        return snr_limit(cfg, loc, budget, LimitCase.NY_INF)
    if model is ModelTag.LIMIT_BOTH:
        return snr_limit(cfg, loc, budget, LimitCase.BOTH_INF)
    if model is ModelTag.LIMIT_ISOTROPIC:
        return snr_limit_isotropic(cfg, budget)
    if model is ModelTag.UPW_PROJECTED:
        return snr_upw(cfg, loc, budget)
    if model is ModelTag.UPW_CONVENTIONAL:
        return snr_upw_conventional(cfg, loc, budget)
    if model is ModelTag.ULA_CLOSED:
        return snr_ula_closed(cfg, loc, budget)[0]
    if model is ModelTag.ULA_LIMIT:
        return snr_ula_limit(cfg, loc, budget)
    if model is ModelTag.ULA_UPW:
        return snr_ula_upw(cfg, loc, budget)
    raise ValueError(f"unknown model {model!r}")
