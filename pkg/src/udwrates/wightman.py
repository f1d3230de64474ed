"""Thermal Wightman functions of the massless scalar field.

Three evaluators of the positive-frequency thermal two-point function:

* ``thermal_wightman_series`` -- free space, as an image sum over thermal
  copies spaced i*beta in time (truncated symmetrically, with analytic
  Hurwitz-zeta tail corrections).
* ``thermal_wightman_coth`` -- free space, the equivalent two-coth closed
  form; requires nonzero spatial separation.
* ``cavity_thermal_wightman`` -- Dirichlet cavity of length L, a double
  image sum (thermal copies times spatial mirror copies, difference term
  minus mirror term).

The time argument may be complex; that makes the KMS shift dt -> dt - i*beta
directly expressible.  The i*epsilon prescription is kept explicit: epsilon
is never set to zero here, and any epsilon -> 0 statement is owned by the
extrapolation in the oracle module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import zeta as _hurwitz_zeta

from .errors import ConvergenceError, DomainError
from .kernels import DEFAULT_POLICY, SeriesPolicy

_PREF = -1.0 / (4.0 * math.pi**2)


@dataclass(frozen=True)
class SpacetimeSeparation:
    """Two detection events: time difference dt (may be complex), transverse
    offsets dx, dy, and the two longitudinal coordinates z1, z2.

    Both coordinates are kept (not just z1 - z2) because the cavity form
    depends on z1 + z2 through the mirror images.
    """

    dt: complex
    dx: float = 0.0
    dy: float = 0.0
    z1: float = 0.0
    z2: float = 0.0

    @property
    def spatial_distance(self) -> float:
        return math.sqrt(self.dx**2 + self.dy**2 + (self.z1 - self.z2) ** 2)


@dataclass(frozen=True)
class RegulatorSpec:
    """The i*epsilon prescription plus the image-sum truncation policy."""

    epsilon: float = 1e-12
    image_policy: SeriesPolicy = field(default_factory=SeriesPolicy)

    def __post_init__(self):
        if not self.epsilon > 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")


DEFAULT_REGULATOR = RegulatorSpec(image_policy=DEFAULT_POLICY)


def _thermal_image_sum(a, r: float, beta: float, policy: SeriesPolicy):
    """sum over m in Z of 1/((a - i*m*beta)^2 - r^2), a complex (scalar or array).

    Symmetric truncation at M plus tail corrections through 1/m^6; the terms
    pair into an even series whose tail is a polynomial in 1/(m*beta) with
    Hurwitz-zeta sums.
    """
    a = np.asarray(a, dtype=complex)
    amax = float(np.max(np.abs(a))) if a.size else 0.0
    scale = (amax + r + beta) / beta
    # the post-correction error is ~ 50 * (scale+1)^6 / beta^2 * zeta(8, M+1);
    # invert it (zeta(8, M+1) ~ 1/(7 M^7)) for the starting truncation
    target = policy.rel_tol
    M = max(96, int(math.ceil(12.0 * scale)),
            int(math.ceil((50.0 * (scale + 1.0) ** 6 / (7.0 * beta**2 * target)) ** (1.0 / 7.0))))
    a_col = a[..., None]
    q = a * a - r * r
    while True:
        M = min(M, policy.max_terms)
        m = np.arange(1.0, M + 1.0)
        imb = 1j * m * beta
        total = (1.0 / (q)
                 + np.sum(1.0 / ((a_col - imb) ** 2 - r * r)
                          + 1.0 / ((a_col + imb) ** 2 - r * r), axis=-1))
        s2 = _hurwitz_zeta(2, M + 1)
        s4 = _hurwitz_zeta(4, M + 1)
        s6 = _hurwitz_zeta(6, M + 1)
        tail = (-(2.0 / beta**2) * s2
                - ((2.0 * q - 8.0 * a * a) / beta**4) * s4
                - ((2.0 * q * q - 24.0 * a * a * q + 32.0 * a**4) / beta**6) * s6)
        est = 50.0 * (scale + 1.0) ** 6 / beta**2 * _hurwitz_zeta(8, M + 1)
        norm = float(np.max(np.abs(total + tail)))
        if est <= max(policy.abs_tol, policy.rel_tol * max(norm, 1.0)) or M >= policy.max_terms:
            return total + tail, est
        M *= 2


def _thermal_closed(a, r: float, beta: float):
    """Exact resummation of the thermal image series (vectorized in a).

    For r > 0: the two-coth form.  At spatial coincidence the image series
    sums to -(pi/beta)^2 / (4 pi^2 sinh^2(pi a / beta)).
    """
    a = np.asarray(a, dtype=complex)
    if r == 0.0:
        x = math.pi * a / beta
        big = np.abs(x.real) > 350.0
        safe = np.where(big, 1.0, x)
        inv_sinh2 = np.where(big, 0.0, 1.0 / np.sinh(safe) ** 2)
        return _PREF * (math.pi / beta) ** 2 * inv_sinh2
    pref = -_PREF * math.pi / (2.0 * beta * r)
    return pref * (1.0 / np.tanh(math.pi * (r - a) / beta)
                   + 1.0 / np.tanh(math.pi * (r + a) / beta))


def thermal_wightman_series(sep: SpacetimeSeparation, beta: float,
                            reg: RegulatorSpec = DEFAULT_REGULATOR) -> complex:
    """Free-space thermal Wightman function, image-series representation.

    -1/(4 pi^2) * sum_m 1/((dt - i m beta - i eps)^2 - |dx|^2).  Valid at
    spatial coincidence (unlike the coth form).
    """
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    a = complex(sep.dt) - 1j * reg.epsilon
    r = sep.spatial_distance
    total, est = _thermal_image_sum(a, r, beta, reg.image_policy)
    if est > 100.0 * reg.image_policy.rel_tol * max(abs(complex(total)), 1.0):
        raise ConvergenceError("thermal image series did not converge", tail_estimate=est)
    return _PREF * complex(total)


def thermal_wightman_coth(sep: SpacetimeSeparation, beta: float,
                          reg: RegulatorSpec = DEFAULT_REGULATOR) -> complex:
    """Free-space thermal Wightman function, two-coth closed form.

    1/(4 pi^2) * pi/(2 beta |dx|) * [coth(pi(|dx| - dt + i eps)/beta)
                                     + coth(pi(|dx| + dt - i eps)/beta)]
    Requires |dx| > 0; use the series form at spatial coincidence.
    """
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    r = sep.spatial_distance
    if r == 0.0:
        raise DomainError("coth representation requires nonzero spatial separation")
    a = complex(sep.dt) - 1j * reg.epsilon
    pref = 1.0 / (4.0 * math.pi**2) * math.pi / (2.0 * beta * r)
    arg_minus = math.pi * (r - a) / beta
    arg_plus = math.pi * (r + a) / beta
    return complex(pref * (1.0 / np.tanh(arg_minus) + 1.0 / np.tanh(arg_plus)))


def cavity_thermal_wightman(sep: SpacetimeSeparation, beta: float, L: float,
                            reg: RegulatorSpec = DEFAULT_REGULATOR) -> complex:
    """Thermal Wightman function between two points inside a Dirichlet cavity.

    Double image sum: for every spatial image index n the difference term
    (z1 - z2 - 2nL) contributes positively and the mirror term
    (z1 + z2 - 2nL) negatively, each carrying a full thermal image sum.
    Spatial images are added in symmetric pairs; the paired terms decay like
    1/n^3, and iteration stops on the policy tolerance.
    """
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    if not L > 0:
        raise DomainError(f"L must be positive, got {L}")
    if not (0.0 <= sep.z1 <= L and 0.0 <= sep.z2 <= L):
        raise DomainError(f"cavity form needs 0 <= z1, z2 <= L, got {sep.z1}, {sep.z2}")
    policy = reg.image_policy
    a = complex(sep.dt) - 1j * reg.epsilon
    rho2 = sep.dx**2 + sep.dy**2
    # beyond r_sat the thermal sum has saturated onto its closed form to
    # better than exp(-16 pi); use it there so far images cost O(1)
    r_sat = abs(a) + 8.0 * beta

    def image_sum(r: float) -> complex:
        if r > r_sat:
            return complex(-4.0 * math.pi**2 * _thermal_closed(a, r, beta))
        total, _ = _thermal_image_sum(a, r, beta, policy)
        return complex(total)

    def pair_value(n: int) -> complex:
        r_diff = math.sqrt(rho2 + (sep.z1 - sep.z2 - 2.0 * n * L) ** 2)
        r_mirr = math.sqrt(rho2 + (sep.z1 + sep.z2 - 2.0 * n * L) ** 2)
        return image_sum(r_diff) - image_sum(r_mirr)

    total = pair_value(0)
    tol = max(policy.abs_tol, policy.rel_tol * abs(total))
    est = math.inf
    prev_coeff = None
    for n in range(1, policy.max_terms + 1):
        term = pair_value(n) + pair_value(-n)
        total += term
        # beyond a few mirror spacings the paired terms decay smoothly like
        # coeff/n^3; close the tail with the Hurwitz-zeta sum of that model
        coeff = term * n**3
        if prev_coeff is not None and n >= 4:
            s3 = float(_hurwitz_zeta(3, n + 1))
            correction = 0.5 * (coeff + prev_coeff) * s3
            est = abs(coeff - prev_coeff) * s3 + abs(coeff) * s3 / n
            if est <= tol:
                return _PREF * (total + correction)
        prev_coeff = coeff
    raise ConvergenceError("cavity image sum exceeded max_terms", tail_estimate=est)
