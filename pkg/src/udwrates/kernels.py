"""Scalar kernels and convergence-controlled image sums.

Every closed-form transition rate in this package is assembled from the
kernels in this module:

* ``sinc_kernel`` -- the elementary boundary kernel sin(dE*s)/(2*pi*s).
* ``boundary_sum_q``, ``image_sum_r/s/t`` -- image sums of the sinc kernel
  over a mirror lattice of period ``twoL``.  These series converge only
  conditionally (terms decay like 1/n), so they are evaluated by symmetric
  pairing plus Abel regularization with Richardson extrapolation in (1-r),
  falling back to an exact sawtooth/Bernoulli split near lattice resonances
  where the Abel term budget would explode.
* ``accel_kernel``, ``accel_sum_f/h/m/n`` -- the uniformly-accelerated
  counterparts.  Their terms decay absolutely (like 1/(alpha*n^2)), so they
  are summed directly, with the slowly-oscillating tail replaced by an exact
  integral (closed form in rapidity space) plus Euler-Maclaurin corrections.

All arguments are energy-scaled: lengths carry units of 1/dE and outputs
carry units of dE.  Functions are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

TWO_PI = 2.0 * math.pi

# Abel evaluation: series truncated where r^n < _ABEL_DELTA, Richardson over
# _ABEL_POINTS geometric h-steps.  Fallback kicks in when the oscillation
# angle sits within _RHO_FALLBACK of a lattice resonance.
_ABEL_DELTA = 1e-13
_ABEL_POINTS = 8
_RHO_FALLBACK = 0.02
_BERNOULLI_TERMS = 20000


@dataclass(frozen=True)
class SeriesPolicy:
    """Convergence controls for the image sums.

    rel_tol / abs_tol bound the estimated truncation error; max_terms caps
    the number of summed image pairs; sinc_threshold is the argument below
    which sin(x)/x switches to its Taylor form.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_terms: int = 10**6
    sinc_threshold: float = 1e-4

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if not (0 < self.sinc_threshold < 0.1):
            raise DomainError("sinc_threshold must lie in (0, 0.1)")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


DEFAULT_POLICY = SeriesPolicy()


@dataclass(frozen=True)
class KernelValue:
    """Result of a convergence-controlled sum (value in units of dE)."""

    value: float
    terms_used: int
    converged: bool
    tail_estimate: float = 0.0
    degenerate: bool = False

    def __float__(self) -> float:
        return self.value


# ---------------------------------------------------------------------------
# elementary kernels
# ---------------------------------------------------------------------------

def planck_occupation(x: float) -> float:
    """Mean boson occupation 1/(exp(x) - 1) for x = dE/T > 0.

    For x < 1e-8 the Laurent expansion 1/x - 1/2 + x/12 is used to avoid
    cancellation in expm1.
    """
    if not x > 0:
        raise DomainError(f"occupation requires x > 0, got {x}")
    if x < 1e-8:
        return 1.0 / x - 0.5 + x / 12.0
    return 1.0 / math.expm1(x)


def _sinc_poly(u):
    # 3-term Taylor of sin(u)/u, valid to ~1e-24 for |u| < 1e-4
    u2 = u * u
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0


def _p_signed(dE: float, s, threshold: float = DEFAULT_POLICY.sinc_threshold):
    """sin(dE*s)/(2*pi*s) for signed (possibly array) separation s; even in s."""
    s = np.asarray(s, dtype=float)
    u = dE * s
    small = np.abs(u) < threshold
    safe = np.where(small, 1.0, s)
    out = np.where(small, (dE / TWO_PI) * _sinc_poly(u), np.sin(u) / (TWO_PI * safe))
    return out if out.ndim else float(out)


def sinc_kernel(dE: float, s: float, threshold: float = DEFAULT_POLICY.sinc_threshold) -> float:
    """Boundary kernel sin(dE*s)/(2*pi*s); the s -> 0 limit is dE/(2*pi).

    Requires dE > 0 and s >= 0 (the kernel is even, callers pass |s|).
    """
    if dE <= 0:
        raise DomainError(f"sinc_kernel requires dE > 0, got {dE}")
    if s < 0:
        raise DomainError(f"sinc_kernel requires s >= 0, got {s}")
    return float(_p_signed(dE, s, threshold))


def accel_kernel(dE: float, alpha: float, z: float,
                 threshold: float = DEFAULT_POLICY.sinc_threshold) -> float:
    """Accelerated boundary kernel sin((2*dE/alpha)*asinh(alpha*z)) / (4*pi*z*sqrt(1+alpha^2 z^2)).

    Even in z with removable limit dE/(2*pi) at z = 0.  alpha = 0 reduces to
    the inertial kernel sin(2*dE*z)/(4*pi*z).
    """
    if dE <= 0:
        raise DomainError(f"accel_kernel requires dE > 0, got {dE}")
    if alpha < 0:
        raise DomainError(f"accel_kernel requires alpha >= 0, got {alpha}")
    if z < 0:
        raise DomainError(f"accel_kernel requires z >= 0, got {z}")
    return float(_g_signed(dE, alpha, z, threshold))


def _g_signed(dE: float, alpha: float, z, threshold: float = DEFAULT_POLICY.sinc_threshold):
    """Accelerated kernel for signed (possibly array) z; even in z."""
    if alpha == 0.0:
        return _p_signed(dE, 2.0 * np.asarray(z, dtype=float), threshold)
    z = np.asarray(z, dtype=float)
    w = alpha * z
    u = (2.0 * dE / alpha) * np.arcsinh(w)
    small_u = np.abs(u) < threshold
    sinc_u = np.where(small_u, _sinc_poly(u), np.sin(u) / np.where(small_u, 1.0, u))
    small_w = np.abs(w) < 1e-4
    w2 = w * w
    asinh_ratio = np.where(small_w, 1.0 - w2 / 6.0 + 0.075 * w2 * w2,
                           np.arcsinh(w) / np.where(small_w, 1.0, w))
    out = (dE / TWO_PI) * sinc_u * asinh_ratio / np.sqrt(1.0 + w2)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# closed sawtooth / Bernoulli sums on [0, 2*pi)
# ---------------------------------------------------------------------------

def _wrap_angle(x: float) -> float:
    xbar = math.fmod(x, TWO_PI)
    if xbar < 0.0:
        xbar += TWO_PI
    return xbar


def _sigma1(xbar: float) -> float:
    # sum sin(n x)/n; termwise zero at the resonance itself
    if xbar == 0.0:
        return 0.0
    return 0.5 * (math.pi - xbar)


def _gamma2(xbar: float) -> float:
    # sum cos(n x)/n^2
    return math.pi**2 / 6.0 - 0.5 * math.pi * xbar + 0.25 * xbar * xbar


def _sigma3(xbar: float) -> float:
    # sum sin(n x)/n^3
    return (math.pi**2 * xbar) / 6.0 - 0.25 * math.pi * xbar * xbar + xbar**3 / 12.0


def _gamma4(xbar: float) -> float:
    # sum cos(n x)/n^4
    return (math.pi**4 / 90.0 - (math.pi**2) * xbar**2 / 12.0
            + math.pi * xbar**3 / 12.0 - xbar**4 / 48.0)


# ---------------------------------------------------------------------------
# conditionally convergent image sums (static / thermal side)
# ---------------------------------------------------------------------------

def _neville_to_zero(hs: np.ndarray, vals: np.ndarray) -> tuple[float, float]:
    """Polynomial extrapolation of (h, val) samples to h = 0.

    Returns (limit, change at the final order) -- the change is the error
    estimate.
    """
    v = np.array(vals, dtype=float)
    n = len(v)
    prev = v[0]
    for k in range(1, n):
        for i in range(n - k):
            v[i] = (hs[i] * v[i + 1] - hs[i + k] * v[i]) / (hs[i] - hs[i + k])
        if k == n - 2:
            prev = v[0]
    return float(v[0]), float(abs(v[0] - prev))


def _abel_paired(term_fn, xbar: float, policy: SeriesPolicy):
    """Abel-regularized sum over n >= 1 of an oscillatory paired series.

    term_fn(n) must return the exact paired terms.  xbar is the wrapped
    oscillation angle of the dominant sin(n*x)/n tail; the Richardson step
    h0 shrinks with the distance 2*sin(xbar/2) to the nearest resonance.
    Returns None when the required term budget exceeds policy.max_terms.
    """
    rho = 2.0 * abs(math.sin(0.5 * xbar))
    if rho < _RHO_FALLBACK:
        return None
    h0 = min(1.0 / 64.0, rho / 10.0)
    hs = np.array([h0 / 2**j for j in range(_ABEL_POINTS)])
    n_needed = int(math.ceil(math.log(1.0 / _ABEL_DELTA) / hs[-1]))
    if n_needed > policy.max_terms:
        return None
    vals = []
    for h in hs:
        n_max = int(math.ceil(math.log(1.0 / _ABEL_DELTA) / h))
        n = np.arange(1.0, n_max + 1.0)
        vals.append(float(np.sum(term_fn(n) * (1.0 - h) ** n)))
    value, est = _neville_to_zero(hs, np.array(vals))
    return value, est, n_needed


def _bilateral_bernoulli(dE: float, a: float, lam: float, policy: SeriesPolicy):
    """Sum over n >= 1 of the paired terms p(dE, a-n*lam) + p(dE, a+n*lam).

    Splits each paired term into four sawtooth/Bernoulli basis series with
    closed forms plus an absolutely convergent O(1/n^5) remainder.  Exact at
    lattice resonances, where the Abel route stalls.
    """
    x = dE * lam
    xbar = _wrap_angle(x)
    coef_a = math.cos(dE * a) / (math.pi * lam)
    coef_b = a * math.sin(dE * a) / (math.pi * lam * lam)
    r2 = (a / lam) ** 2
    closed = (coef_a * (_sigma1(xbar) + r2 * _sigma3(xbar))
              - coef_b * (_gamma2(xbar) + r2 * _gamma4(xbar)))

    n_rem = min(_BERNOULLI_TERMS, policy.max_terms)
    n = np.arange(1.0, n_rem + 1.0)
    exact = _p_signed(dE, a - n * lam, policy.sinc_threshold) \
        + _p_signed(dE, a + n * lam, policy.sinc_threshold)
    sin_nx = np.sin(n * x) if xbar != 0.0 else np.zeros_like(n)
    cos_nx = np.cos(n * x)
    leading = (coef_a * (sin_nx / n + r2 * sin_nx / n**3)
               - coef_b * (cos_nx / n**2 + r2 * cos_nx / n**4))
    remainder = float(np.sum(exact - leading))
    # remainder terms decay like 1/n^5 once n*lam > |a|
    tail = (abs(coef_a) + abs(coef_b)) * r2 * r2 / (4.0 * max(n_rem, 1) ** 4 + 1.0)
    return closed + remainder, tail, n_rem


def _bilateral_image_sum(dE: float, a: float, lam: float, policy: SeriesPolicy,
                         degenerate: bool = False) -> KernelValue:
    """Bilateral image sum over n in Z of p(dE, a - n*lam), lam > 0."""
    t0 = float(_p_signed(dE, a, policy.sinc_threshold))
    xbar = _wrap_angle(dE * lam)

    def paired(n):
        return (_p_signed(dE, a - n * lam, policy.sinc_threshold)
                + _p_signed(dE, a + n * lam, policy.sinc_threshold))

    abel = _abel_paired(paired, xbar, policy)
    if abel is not None:
        tail_sum, est, terms = abel
    else:
        tail_sum, est, terms = _bilateral_bernoulli(dE, a, lam, policy)
    value = t0 + tail_sum
    converged = est <= policy.tolerance(value)
    return KernelValue(value, terms, converged, est, degenerate)


def boundary_sum_q(dE: float, twoL: float, policy: SeriesPolicy = DEFAULT_POLICY) -> KernelValue:
    """Pure boundary sum 2 * sum_{n>=1} sinc_kernel(dE, n*twoL).

    Evaluated through the closed resummation sum sin(n*x)/n = (pi - x mod 2pi)/2
    with x = dE*twoL.  At an exact resonance (x mod 2pi == 0) every term
    vanishes; the value 0 is returned with the degenerate flag set.
    """
    if dE <= 0:
        raise DomainError(f"boundary_sum_q requires dE > 0, got {dE}")
    if twoL <= 0:
        raise DomainError(f"boundary_sum_q requires twoL > 0, got {twoL}")
    xbar = _wrap_angle(dE * twoL)
    if xbar == 0.0:
        return KernelValue(0.0, 0, True, 0.0, degenerate=True)
    value = _sigma1(xbar) / (math.pi * twoL)
    return KernelValue(value, 0, True, 0.0)


def image_sum_r(dE: float, two_z0: float, twoL: float,
                policy: SeriesPolicy = DEFAULT_POLICY) -> KernelValue:
    """Mirror-image sum over n in Z of sinc_kernel(dE, two_z0 - n*twoL).

    two_z0 is twice the detector-wall distance; the detector must sit
    strictly between the walls (0 < two_z0 < twoL).
    """
    if dE <= 0:
        raise DomainError(f"image_sum_r requires dE > 0, got {dE}")
    if twoL <= 0:
        raise DomainError(f"image_sum_r requires twoL > 0, got {twoL}")
    if not (0.0 < two_z0 < twoL):
        raise DomainError(
            f"detector on a Dirichlet node: need 0 < two_z0 < twoL, got {two_z0}, {twoL}")
    return _bilateral_image_sum(dE, two_z0, twoL, policy)


def image_sum_s(dE: float, two_z0: float, sep: float, twoL: float,
                policy: SeriesPolicy = DEFAULT_POLICY) -> KernelValue:
    """Cross-image sum over n in Z of sinc_kernel(dE, two_z0 + sep - n*twoL)."""
    if dE <= 0:
        raise DomainError(f"image_sum_s requires dE > 0, got {dE}")
    if twoL <= 0:
        raise DomainError(f"image_sum_s requires twoL > 0, got {twoL}")
    if two_z0 <= 0:
        raise DomainError(f"image_sum_s requires two_z0 > 0, got {two_z0}")
    if sep < 0:
        raise DomainError(f"image_sum_s requires sep >= 0, got {sep}")
    a = two_z0 + sep
    if a >= twoL:
        raise DomainError(
            f"image offset two_z0 + sep = {a} must stay below twoL = {twoL}")
    degenerate = any(abs(a - n * twoL) == 0.0 for n in (0, 1))
    return _bilateral_image_sum(dE, a, twoL, policy, degenerate=degenerate)


def image_sum_t(dE: float, d: float, twoL: float,
                policy: SeriesPolicy = DEFAULT_POLICY) -> KernelValue:
    """Separation-image sum over n in Z of sinc_kernel(dE, d - n*twoL).

    d = 0 is allowed; the n = 0 term is then the sinc limit dE/(2*pi).
    """
    if dE <= 0:
        raise DomainError(f"image_sum_t requires dE > 0, got {dE}")
    if twoL <= 0:
        raise DomainError(f"image_sum_t requires twoL > 0, got {twoL}")
    if d < 0 or d >= twoL:
        raise DomainError(f"image_sum_t requires 0 <= d < twoL, got {d}, {twoL}")
    return _bilateral_image_sum(dE, d, twoL, policy)


# ---------------------------------------------------------------------------
# absolutely convergent image sums (accelerated side)
# ---------------------------------------------------------------------------

def _g_prime(dE: float, alpha: float, z: float) -> float:
    """d/dz of the accelerated kernel, z > 0."""
    w = alpha * z
    c2 = 1.0 + w * w
    u = (2.0 * dE / alpha) * math.asinh(w)
    return (2.0 * dE * math.cos(u) / (4.0 * math.pi * z * c2)
            - math.sin(u) * (1.0 + 2.0 * w * w) / (4.0 * math.pi * z * z * c2**1.5))


def _g_third(dE: float, alpha: float, z: float, step: float) -> float:
    # central 3rd derivative; step must stay below the local oscillation scale
    f = lambda zz: float(_g_signed(dE, alpha, zz))
    return (f(z + 2 * step) - 2 * f(z + step) + 2 * f(z - step) - f(z - 2 * step)) / (2 * step**3)


def _accel_tail_integral(dE: float, alpha: float, z_from: float) -> float:
    """Exact integral of the accelerated kernel from z_from to infinity.

    In rapidity variables the integrand becomes sin(u)/sinh(u/nu) with
    nu = 2*dE/alpha, whose tail integral has the exponential closed form
    2 * sum_k exp(-c_k u0) (c_k sin u0 + cos u0)/(1 + c_k^2), c_k = (2k+1)/nu.
    """
    nu = 2.0 * dE / alpha
    u0 = nu * math.asinh(alpha * z_from)
    decay = math.asinh(alpha * z_from)  # = u0/nu, per-k exponent
    kmax = min(int(math.ceil(42.0 / (2.0 * decay))) + 2, 2 * 10**6)
    k = np.arange(kmax, dtype=float)
    c = (2.0 * k + 1.0) / nu
    series = np.exp(-c * u0) * (c * math.sin(u0) + math.cos(u0)) / (1.0 + c * c)
    return 2.0 * float(np.sum(series)) / (4.0 * math.pi * nu)


def _accel_one_sided_tail(dE: float, alpha: float, period: float, shift: float,
                          n_from: int) -> tuple[float, float]:
    """sum over n > n_from of g(n*period + shift) with |shift| < period.

    Midpoint Euler-Maclaurin: integral + f'/24 - 7 f'''/5760; the last term
    doubles as the error estimate.
    """
    z0 = (n_from + 0.5) * period + shift
    integral = _accel_tail_integral(dE, alpha, z0) / period
    em1 = (period / 24.0) * _g_prime(dE, alpha, z0)
    wloc = math.sqrt(1.0 + (alpha * z0) ** 2)
    step = min(period / 4.0, 0.1 * wloc / dE)
    em2 = -(7.0 * period**3 / 5760.0) * _g_third(dE, alpha, z0, step)
    return integral + em1 + em2, abs(em2)


def _accel_lattice_sum(dE: float, alpha: float, offset: float, period: float,
                       policy: SeriesPolicy) -> KernelValue:
    """Bilateral sum over n in Z of accel_kernel(dE, alpha, |offset - n*period|).

    alpha = 0 delegates to the inertial image sum.  For alpha > 0 the direct
    head runs until the local oscillation is slow (n ~ dE/alpha), after which
    the exact rapidity-space tail applies.
    """
    if period <= 0:
        raise DomainError(f"accelerated sums require a positive period, got {period}")
    if alpha < 0:
        raise DomainError(f"accelerated sums require alpha >= 0, got {alpha}")
    if alpha == 0.0:
        return _bilateral_image_sum(dE, 2.0 * offset, 2.0 * period, policy)

    n_head = max(2000, int(math.ceil(dE / alpha)))
    capped = n_head > policy.max_terms
    n_head = min(n_head, policy.max_terms)

    n = np.arange(1.0, n_head + 1.0)
    head = float(_g_signed(dE, alpha, offset, policy.sinc_threshold))
    head += float(np.sum(_g_signed(dE, alpha, offset - n * period, policy.sinc_threshold)))
    head += float(np.sum(_g_signed(dE, alpha, offset + n * period, policy.sinc_threshold)))

    tail_r, est_r = _accel_one_sided_tail(dE, alpha, period, -offset, n_head)
    tail_l, est_l = _accel_one_sided_tail(dE, alpha, period, +offset, n_head)
    value = head + tail_r + tail_l
    est = 3.0 * (est_r + est_l)
    if capped:
        # the tail formula degrades once the head stops while still oscillating
        est += abs(tail_r) + abs(tail_l)
    tol = policy.tolerance(value)
    if capped and est > 50.0 * tol:
        raise ConvergenceError(
            f"accelerated image sum needs ~{math.ceil(dE / alpha)} terms, "
            f"max_terms = {policy.max_terms}", tail_estimate=est)
    return KernelValue(value, n_head, est <= tol, est)


def accel_sum_f(dE: float, alpha: float, halfL: float,
                policy: SeriesPolicy = DEFAULT_POLICY) -> KernelValue:
    """Pure boundary sum 2 * sum_{n>=1} accel_kernel(dE, alpha, 2*n*halfL).

    The lattice step 2*halfL is half the image spacing, matching the
    inertial limit accel_sum_f -> boundary_sum_q(dE, 4*halfL) as alpha -> 0.
    """
    if dE <= 0:
        raise DomainError(f"accel_sum_f requires dE > 0, got {dE}")
    if halfL <= 0:
        raise DomainError(f"accel_sum_f requires halfL > 0, got {halfL}")
    full = _accel_lattice_sum(dE, alpha, 0.0, 2.0 * halfL, policy)
    value = full.value - dE / TWO_PI  # remove the n = 0 term
    return KernelValue(value, full.terms_used, full.converged, full.tail_estimate,
                       full.degenerate)


def accel_sum_h(dE: float, alpha: float, z0: float, halfL: float,
                policy: SeriesPolicy = DEFAULT_POLICY) -> KernelValue:
    """Mirror sum over n in Z of accel_kernel(dE, alpha, |z0 - 2*n*halfL|)."""
    if dE <= 0:
        raise DomainError(f"accel_sum_h requires dE > 0, got {dE}")
    if halfL <= 0:
        raise DomainError(f"accel_sum_h requires halfL > 0, got {halfL}")
    if not (0.0 < z0 < 2.0 * halfL):
        raise DomainError(
            f"detector on a Dirichlet node: need 0 < z0 < 2*halfL, got {z0}, {2 * halfL}")
    return _accel_lattice_sum(dE, alpha, z0, 2.0 * halfL, policy)


def accel_sum_m(dE: float, alpha: float, z0: float, sep: float, halfL: float,
                policy: SeriesPolicy = DEFAULT_POLICY) -> KernelValue:
    """Cross-mirror sum over n in Z of accel_kernel(dE, alpha, |z0 + sep - 2*n*halfL|)."""
    if dE <= 0:
        raise DomainError(f"accel_sum_m requires dE > 0, got {dE}")
    if halfL <= 0:
        raise DomainError(f"accel_sum_m requires halfL > 0, got {halfL}")
    if z0 <= 0 or sep < 0:
        raise DomainError(f"accel_sum_m requires z0 > 0 and sep >= 0, got {z0}, {sep}")
    if z0 + sep >= 2.0 * halfL:
        raise DomainError(
            f"image offset z0 + sep = {z0 + sep} must stay below 2*halfL = {2 * halfL}")
    return _accel_lattice_sum(dE, alpha, z0 + sep, 2.0 * halfL, policy)


def accel_sum_n(dE: float, alpha: float, half_d: float, halfL: float,
                policy: SeriesPolicy = DEFAULT_POLICY) -> KernelValue:
    """Separation sum over n in Z of accel_kernel(dE, alpha, |half_d - 2*n*halfL|)."""
    if dE <= 0:
        raise DomainError(f"accel_sum_n requires dE > 0, got {dE}")
    if halfL <= 0:
        raise DomainError(f"accel_sum_n requires halfL > 0, got {halfL}")
    if half_d < 0 or half_d >= 2.0 * halfL:
        raise DomainError(
            f"accel_sum_n requires 0 <= half_d < 2*halfL, got {half_d}, {2 * halfL}")
    return _accel_lattice_sum(dE, alpha, half_d, 2.0 * halfL, policy)
