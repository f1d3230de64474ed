"""Closed-form transition rates for single and entangled two-atom detectors.

Covers every combination of {single atom, entangled pair} x {static in a
thermal bath, uniformly accelerated} x {free space, single Dirichlet mirror,
Dirichlet cavity} x {upward, downward}.  Each rate factorizes as

    rate = coupling^2 * geometric_factor * occupation_factor

where the geometric factor carries all boundary dependence and the
occupation factor is the Planck weight at the effective temperature (the
bath temperature, or alpha/(2*pi) for uniform acceleration).  Both
transition directions of a scenario share one geometric factor, so their
ratio is exactly the Boltzmann factor (detailed balance).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal, Optional, Union

from . import kernels as K
from .errors import DomainError
from .kernels import DEFAULT_POLICY, SeriesPolicy

TWO_PI = 2.0 * math.pi

Direction = Literal["up", "down"]


# ---------------------------------------------------------------------------
# scenario types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DetectorSpec:
    """Two-level detector: transition energy omega0 > 0, dimensionless coupling."""

    omega0: float
    coupling: float

    def __post_init__(self):
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        if not self.coupling > 0:
            raise DomainError(f"coupling must be positive, got {self.coupling}")


@dataclass(frozen=True)
class ThermalBath:
    """Static detector in a thermal field state at temperature T >= 0."""

    T: float

    def __post_init__(self):
        if self.T < 0:
            raise DomainError(f"temperature must be >= 0, got {self.T}")


@dataclass(frozen=True)
class UniformAcceleration:
    """Uniformly accelerated detector, proper acceleration alpha > 0."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")


BathSpec = Union[ThermalBath, UniformAcceleration]


@dataclass(frozen=True)
class FreeSpace:
    pass


@dataclass(frozen=True)
class SingleBoundary:
    """One Dirichlet mirror at distance z0 > 0 from the (nearest) atom."""

    z0: float

    def __post_init__(self):
        if not self.z0 > 0:
            raise DomainError(f"z0 must be positive, got {self.z0}")


@dataclass(frozen=True)
class Cavity:
    """Dirichlet cavity of length L with the (nearest) atom at 0 < z0 < L."""

    L: float
    z0: float

    def __post_init__(self):
        if not self.L > 0:
            raise DomainError(f"L must be positive, got {self.L}")
        if not (0.0 < self.z0 < self.L):
            raise DomainError(f"need 0 < z0 < L, got z0={self.z0}, L={self.L}")


GeometrySpec = Union[FreeSpace, SingleBoundary, Cavity]


@dataclass(frozen=True)
class TwoAtomConfig:
    """Entangled pair |psi> = sin(theta)|g e> + cos(theta)|e g> at separation d."""

    theta: float
    d: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        if not self.d > 0:
            raise DomainError(f"d must be positive, got {self.d}")


@dataclass(frozen=True)
class RateResult:
    """geometric_factor (energy), occupation_factor, absolute and normalized rate.

    normalized_rate is the rate per coupling^2 * omega0 / (2*pi), the natural
    plot unit.  converged reports whether every kernel met its tolerance.
    """

    geometric_factor: float
    occupation_factor: float
    rate: float
    normalized_rate: float
    converged: bool = True


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def effective_temperature(bath: BathSpec) -> float:
    """Bath temperature, or the FDU temperature alpha/(2*pi) for acceleration."""
    if isinstance(bath, ThermalBath):
        return bath.T
    return bath.alpha / TWO_PI


def _occupation(bath: BathSpec, omega0: float, direction: Direction) -> float:
    if direction not in ("up", "down"):
        raise DomainError(f"direction must be 'up' or 'down', got {direction!r}")
    if isinstance(bath, ThermalBath):
        if bath.T == 0.0:
            return 0.0 if direction == "up" else 1.0
        x = omega0 / bath.T
    else:
        x = TWO_PI * omega0 / bath.alpha
    nbar = K.planck_occupation(x)
    return nbar if direction == "up" else 1.0 + nbar


def _check_two_atom_geometry(geom: GeometrySpec, cfg: TwoAtomConfig) -> None:
    if isinstance(geom, Cavity) and not (geom.z0 + cfg.d < geom.L):
        raise DomainError(
            f"both atoms must sit strictly inside the cavity: z0 + d = "
            f"{geom.z0 + cfg.d} >= L = {geom.L}")


def _assemble(det: DetectorSpec, bath: BathSpec, direction: Direction,
              geometric: float, converged: bool) -> RateResult:
    occ = _occupation(bath, det.omega0, direction)
    rate = det.coupling**2 * geometric * occ
    normalized = geometric * occ / (det.omega0 / TWO_PI)
    return RateResult(geometric, occ, rate, normalized, converged)


# ---------------------------------------------------------------------------
# geometric factors
# ---------------------------------------------------------------------------

def _single_geometric(det: DetectorSpec, bath: BathSpec, geom: GeometrySpec,
                      policy: SeriesPolicy) -> tuple[float, bool]:
    w0 = det.omega0
    free = w0 / TWO_PI
    if isinstance(geom, FreeSpace):
        return free, True
    if isinstance(bath, ThermalBath):
        if isinstance(geom, SingleBoundary):
            return free - K.sinc_kernel(w0, 2.0 * geom.z0, policy.sinc_threshold), True
        q = K.boundary_sum_q(w0, 2.0 * geom.L, policy)
        r = K.image_sum_r(w0, 2.0 * geom.z0, 2.0 * geom.L, policy)
        return free + q.value - r.value, q.converged and r.converged
    # accelerated frame: the mirror case is the L -> infinity survivor of the
    # cavity form, a single accelerated image kernel
    if isinstance(geom, SingleBoundary):
        return free - K.accel_kernel(w0, bath.alpha, geom.z0, policy.sinc_threshold), True
    f = K.accel_sum_f(w0, bath.alpha, geom.L / 2.0, policy)
    h = K.accel_sum_h(w0, bath.alpha, geom.z0, geom.L / 2.0, policy)
    return free + f.value - h.value, f.converged and h.converged


def _two_atom_geometric(det: DetectorSpec, bath: BathSpec, geom: GeometrySpec,
                        cfg: TwoAtomConfig, policy: SeriesPolicy) -> tuple[float, bool]:
    w0 = det.omega0
    free = w0 / TWO_PI
    cos2 = math.cos(cfg.theta) ** 2
    sin2 = math.sin(cfg.theta) ** 2
    cross = math.sin(2.0 * cfg.theta)
    thr = policy.sinc_threshold

    if isinstance(bath, ThermalBath):
        if isinstance(geom, FreeSpace):
            return free + cross * K.sinc_kernel(w0, cfg.d, thr), True
        if isinstance(geom, SingleBoundary):
            z0 = geom.z0
            value = (free
                     - cos2 * K.sinc_kernel(w0, 2.0 * z0, thr)
                     - sin2 * K.sinc_kernel(w0, 2.0 * (z0 + cfg.d), thr)
                     + cross * (K.sinc_kernel(w0, cfg.d, thr)
                                - K.sinc_kernel(w0, 2.0 * z0 + cfg.d, thr)))
            return value, True
        L, z0, d = geom.L, geom.z0, cfg.d
        q = K.boundary_sum_q(w0, 2.0 * L, policy)
        r = K.image_sum_r(w0, 2.0 * z0, 2.0 * L, policy)
        s_same = K.image_sum_s(w0, 2.0 * z0, 2.0 * d, 2.0 * L, policy)
        t = K.image_sum_t(w0, d, 2.0 * L, policy)
        s_cross = K.image_sum_s(w0, 2.0 * z0, d, 2.0 * L, policy)
        value = (free + q.value - cos2 * r.value - sin2 * s_same.value
                 + cross * t.value - cross * s_cross.value)
        ok = all(k.converged for k in (q, r, s_same, t, s_cross))
        return value, ok

    alpha = bath.alpha
    if isinstance(geom, FreeSpace):
        return free + cross * K.accel_kernel(w0, alpha, cfg.d / 2.0, thr), True
    if isinstance(geom, SingleBoundary):
        z0 = geom.z0
        value = (free
                 - cos2 * K.accel_kernel(w0, alpha, z0, thr)
                 - sin2 * K.accel_kernel(w0, alpha, z0 + cfg.d, thr)
                 + cross * (K.accel_kernel(w0, alpha, cfg.d / 2.0, thr)
                            - K.accel_kernel(w0, alpha, z0 + cfg.d / 2.0, thr)))
        return value, True
    L, z0, d = geom.L, geom.z0, cfg.d
    halfL = L / 2.0
    f = K.accel_sum_f(w0, alpha, halfL, policy)
    h = K.accel_sum_h(w0, alpha, z0, halfL, policy)
    m_same = K.accel_sum_m(w0, alpha, z0, d, halfL, policy)
    n = K.accel_sum_n(w0, alpha, d / 2.0, halfL, policy)
    m_cross = K.accel_sum_m(w0, alpha, z0, d / 2.0, halfL, policy)
    value = (free + f.value - cos2 * h.value - sin2 * m_same.value
             + cross * n.value - cross * m_cross.value)
    ok = all(k.converged for k in (f, h, m_same, n, m_cross))
    return value, ok


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def single_atom_rate(det: DetectorSpec, bath: BathSpec, geom: GeometrySpec,
                     direction: Direction,
                     policy: SeriesPolicy = DEFAULT_POLICY) -> RateResult:
    """Upward or downward transition rate of a single detector."""
    geometric, ok = _single_geometric(det, bath, geom, policy)
    return _assemble(det, bath, direction, geometric, ok)


def two_atom_rate(det: DetectorSpec, bath: BathSpec, geom: GeometrySpec,
                  cfg: TwoAtomConfig, direction: Direction,
                  policy: SeriesPolicy = DEFAULT_POLICY) -> RateResult:
    """Transition rate of the entangled pair to |e e> (up) or |g g> (down).

    The nearest atom sits at z0, the second at z0 + d.  Both directions share
    one geometric factor; only the occupation factor differs.
    """
    _check_two_atom_geometry(geom, cfg)
    geometric, ok = _two_atom_geometric(det, bath, geom, cfg, policy)
    return _assemble(det, bath, direction, geometric, ok)


def two_atom_rate_small_ad(det: DetectorSpec, alpha: float, cfg: TwoAtomConfig,
                           direction: Direction) -> RateResult:
    """Free-space accelerated pair rate expanded to second order in alpha*d.

    Geometric factor:

        omega0/(2 pi) + sin(2 theta)/(2 pi d) * [ sin(w0 d)
            - (1/8) { sin(w0 d) + (w0 d / 3) cos(w0 d) } (alpha d)^2 ]

    Warns (without failing) once alpha*d exceeds 0.3, where the truncation
    error becomes noticeable.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    ad = alpha * cfg.d
    if ad > 0.3:
        warnings.warn(f"alpha*d = {ad:.3g} is outside the expansion's comfort zone",
                      stacklevel=2)
    w0 = det.omega0
    wd = w0 * cfg.d
    correction = (math.sin(wd) + (wd / 3.0) * math.cos(wd)) * ad * ad / 8.0
    geometric = (w0 / TWO_PI
                 + math.sin(2.0 * cfg.theta) / (TWO_PI * cfg.d) * (math.sin(wd) - correction))
    return _assemble(det, UniformAcceleration(alpha), direction, geometric, True)


def detailed_balance_ratio(det: DetectorSpec, bath: BathSpec) -> float:
    """Ratio up/down = exp(-omega0 / T_eff); zero for a zero-temperature bath.

    Geometry independent: the shared geometric factor cancels.
    """
    T_eff = effective_temperature(bath)
    if T_eff == 0.0:
        return 0.0
    return math.exp(-det.omega0 / T_eff)


def monopole_elements(theta: float, direction: Direction) -> tuple[float, float]:
    """Monopole matrix elements (mA, mB) of the pair transition.

    For |psi> = sin(theta)|g e> + cos(theta)|e g>, flipping atom A reaches
    |e e> from the sin(theta) component and |g g> from the cos(theta)
    component, so the elements are (sin, cos) upward and (cos, sin)
    downward.  Either way the available weights are {sin^2, cos^2} on the
    diagonal terms and 2 mA mB = sin(2 theta) on the cross term, which are
    exactly the coefficients of the shared geometric factor.
    """
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    if direction == "up":
        return math.sin(theta), math.cos(theta)
    if direction == "down":
        return math.cos(theta), math.sin(theta)
    raise DomainError(f"direction must be 'up' or 'down', got {direction!r}")
