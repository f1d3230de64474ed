"""Transition rates of Unruh-DeWitt detectors in thermal baths and accelerated
frames, in free space and between Dirichlet mirrors."""

from .errors import ConvergenceError, DomainError
from .kernels import (DEFAULT_POLICY, KernelValue, SeriesPolicy, accel_kernel,
                      accel_sum_f, accel_sum_h, accel_sum_m, accel_sum_n,
                      boundary_sum_q, image_sum_r, image_sum_s, image_sum_t,
                      planck_occupation, sinc_kernel)
from .oracle import (ModeSumRate, QuadratureSpec, epsilon_extrapolate,
                     fourier_response, mode_sum_rate)
from .rates import (BathSpec, Cavity, DetectorSpec, FreeSpace, GeometrySpec,
                    RateResult, SingleBoundary, ThermalBath, TwoAtomConfig,
                    UniformAcceleration, detailed_balance_ratio,
                    effective_temperature, monopole_elements, single_atom_rate,
                    two_atom_rate, two_atom_rate_small_ad)
from .units import (CS133, PRESETS, RB87, DimensionlessScenario, LabScenario,
                    PhysicalConstants, Preset, from_dimensionless,
                    load_constants, rate_to_inverse_seconds, to_dimensionless)
from .wightman import (RegulatorSpec, SpacetimeSeparation,
                       cavity_thermal_wightman, thermal_wightman_coth,
                       thermal_wightman_series)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "DomainError",
    "SeriesPolicy", "KernelValue", "DEFAULT_POLICY",
    "planck_occupation", "sinc_kernel", "boundary_sum_q",
    "image_sum_r", "image_sum_s", "image_sum_t",
    "accel_kernel", "accel_sum_f", "accel_sum_h", "accel_sum_m", "accel_sum_n",
    "DetectorSpec", "ThermalBath", "UniformAcceleration", "BathSpec",
    "FreeSpace", "SingleBoundary", "Cavity", "GeometrySpec",
    "TwoAtomConfig", "RateResult",
    "single_atom_rate", "two_atom_rate", "two_atom_rate_small_ad",
    "detailed_balance_ratio", "monopole_elements", "effective_temperature",
    "SpacetimeSeparation", "RegulatorSpec",
    "thermal_wightman_series", "thermal_wightman_coth", "cavity_thermal_wightman",
    "QuadratureSpec", "ModeSumRate", "mode_sum_rate", "fourier_response",
    "epsilon_extrapolate",
    "PhysicalConstants", "LabScenario", "DimensionlessScenario", "Preset",
    "load_constants", "to_dimensionless", "from_dimensionless",
    "rate_to_inverse_seconds", "PRESETS", "RB87", "CS133",
    "__version__",
]
