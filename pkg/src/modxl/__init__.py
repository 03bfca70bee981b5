"""Near-field channel model and SNR analysis for modular XL-arrays."""

from .channel import (
    LinkBudget,
    element_gain,
    element_gain_integrated,
    mrc_beamformer,
    response_vector,
    snr_beamformed,
    snr_mrc_exact,
)
from .closedform import (
    AngularGeometry,
    DomainError,
    LimitCase,
    ModelTag,
    SnrValue,
    collocated_modular_ratio,
    evaluate,
    f_kernel,
    f_kernel_difference,
    snr_boresight,
    snr_closed,
    snr_collocated,
    snr_limit,
    snr_limit_collocated,
    snr_limit_isotropic,
    snr_ula_closed,
    snr_ula_limit,
    snr_ula_upw,
    snr_upw,
    snr_upw_conventional,
)
from .geometry import (
    ArrayConfig,
    ConfigError,
    DerivedGeometry,
    ElementIndex,
    UserLocation,
    derive_geometry,
    element_distance,
    element_position,
)
from .sweep import Series, SweepSpec, SweepTable, SweepVariable, figure_preset, run_sweep

__version__ = "0.1.0"
