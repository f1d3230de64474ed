"""Self-verification suites: every structural identity the rates must obey.

Each suite returns a list of CheckResult; a check passes when its worst
observed deviation stays inside its tolerance (or, for the expected-
difference checks, when the deviation is large enough).  The CLI ``verify``
subcommand prints them; the test suite asserts them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels as K
from . import oracle as O
from . import rates as R
from . import wightman as W

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    worst: float
    tol: float
    detail: str = ""


def _scenarios(rng: np.random.Generator, n: int):
    """Random scenarios spanning all geometries, frames, and atom counts."""
    out = []
    for _ in range(n):
        det = R.DetectorSpec(omega0=1.0, coupling=float(rng.uniform(0.05, 1.0)))
        if rng.random() < 0.5:
            bath = R.ThermalBath(T=float(rng.uniform(0.3, 3.0)))
        else:
            bath = R.UniformAcceleration(alpha=float(rng.uniform(0.8, 20.0)))
        kind = rng.integers(0, 3)
        if kind == 0:
            geom = R.FreeSpace()
        elif kind == 1:
            geom = R.SingleBoundary(z0=float(rng.uniform(0.2, 5.0)))
        else:
            L = float(rng.uniform(1.5, 20.0))
            geom = R.Cavity(L=L, z0=float(rng.uniform(0.05, 0.6)) * L)
        cfg = None
        if rng.random() < 0.5:
            theta = float(rng.uniform(0.0, math.pi))
            if isinstance(geom, R.Cavity):
                d = float(rng.uniform(0.05, 0.9)) * (geom.L - geom.z0)
            else:
                d = float(rng.uniform(0.05, 3.0))
            cfg = R.TwoAtomConfig(theta=theta, d=d)
        out.append((det, bath, geom, cfg))
    return out


def _rate(det, bath, geom, cfg, direction) -> R.RateResult:
    if cfg is None:
        return R.single_atom_rate(det, bath, geom, direction)
    return R.two_atom_rate(det, bath, geom, cfg, direction)


# ---------------------------------------------------------------------------

def check_balance(n_scenarios: int = 120, seed: int = 20240) -> list[CheckResult]:
    """rate(up)/rate(down) == exp(-omega0/T_eff) across random scenarios."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for det, bath, geom, cfg in _scenarios(rng, n_scenarios):
        up = _rate(det, bath, geom, cfg, "up")
        down = _rate(det, bath, geom, cfg, "down")
        expected = R.detailed_balance_ratio(det, bath)
        worst = max(worst, abs(up.rate / down.rate - expected) / expected)
    tol = 1e-12
    return [CheckResult("balance", f"detailed balance over {n_scenarios} random scenarios",
                        worst < tol, worst, tol)]


def check_equivalence() -> list[CheckResult]:
    """Thermal bath versus uniform acceleration at the FDU temperature."""
    out = []
    det = R.DetectorSpec(omega0=1.0, coupling=0.1)
    T = 1.0
    bath_t = R.ThermalBath(T=T)
    bath_a = R.UniformAcceleration(alpha=TWO_PI * T)

    worst = 0.0
    for direction in ("up", "down"):
        rt = R.single_atom_rate(det, bath_t, R.FreeSpace(), direction).rate
        ra = R.single_atom_rate(det, bath_a, R.FreeSpace(), direction).rate
        worst = max(worst, abs(rt - ra) / rt)
    out.append(CheckResult("equivalence", "free-space single-atom FDU equality",
                           worst < 1e-14, worst, 1e-14))

    cav = R.Cavity(L=3.2, z0=0.8)
    rt = R.single_atom_rate(det, bath_t, cav, "up").rate
    ra = R.single_atom_rate(det, bath_a, cav, "up").rate
    diff = abs(rt - ra) / rt
    out.append(CheckResult("equivalence", "cavity thermal/accelerated rates differ",
                           diff > 1e-3, diff, 1e-3,
                           "expected difference; pass means the frames are distinguishable"))

    ratio_t = (R.single_atom_rate(det, bath_t, cav, "up").rate
               / R.single_atom_rate(det, bath_t, cav, "down").rate)
    ratio_a = (R.single_atom_rate(det, bath_a, cav, "up").rate
               / R.single_atom_rate(det, bath_a, cav, "down").rate)
    rdev = abs(ratio_t - ratio_a) / ratio_t
    out.append(CheckResult("equivalence", "cavity up/down ratios agree across frames",
                           rdev < 1e-12, rdev, 1e-12))

    # two-atom free space: the thermal/accelerated difference scales as (alpha d)^2
    d = 0.1
    cfg = R.TwoAtomConfig(theta=math.pi / 4, d=d)

    def rel_diff(ad: float) -> float:
        alpha = ad / d
        acc = R.two_atom_rate(det, R.UniformAcceleration(alpha), R.FreeSpace(), cfg, "up").rate
        th = R.two_atom_rate(det, R.ThermalBath(alpha / TWO_PI), R.FreeSpace(), cfg, "up").rate
        return abs(acc - th) / th

    ratio = rel_diff(1e-2) / rel_diff(5e-3)
    out.append(CheckResult("equivalence", "two-atom free-space difference scales as (alpha*d)^2",
                           abs(ratio - 4.0) < 0.4, ratio, 4.0,
                           "halving alpha*d must shrink the difference 4x (+-10%)"))
    return out


def check_limits() -> list[CheckResult]:
    """Cavity -> single boundary -> free space collapse for both frames and counts."""
    out = []
    det = R.DetectorSpec(omega0=1.0, coupling=0.1)
    baths = (R.ThermalBath(T=1.0), R.UniformAcceleration(alpha=2.5))
    cfg = R.TwoAtomConfig(theta=0.9, d=0.4)

    worst = 0.0
    for bath in baths:
        for cfgi in (None, cfg):
            big = _rate(det, bath, R.Cavity(L=1e4, z0=0.8), cfgi, "up").rate
            mirror = _rate(det, bath, R.SingleBoundary(z0=0.8), cfgi, "up").rate
            worst = max(worst, abs(big - mirror) / mirror)
    out.append(CheckResult("limits", "cavity -> single boundary at w0*L = 1e4",
                           worst < 1e-3, worst, 1e-3))

    worst = 0.0
    for bath in baths:
        for cfgi in (None, cfg):
            far = _rate(det, bath, R.SingleBoundary(z0=1e4), cfgi, "up").rate
            free = _rate(det, bath, R.FreeSpace(), cfgi, "up").rate
            worst = max(worst, abs(far - free) / free)
    out.append(CheckResult("limits", "single boundary -> free space at w0*z0 = 1e4",
                           worst < 1e-3, worst, 1e-3))
    return out


def check_oracle(seed: int = 777) -> list[CheckResult]:
    """Mode-sum and Fourier-transform recomputation of the closed forms."""
    out = []
    rng = np.random.default_rng(seed)
    det = R.DetectorSpec(omega0=1.0, coupling=0.1)

    worst = 0.0
    for _ in range(20):
        L = float(rng.uniform(3.2, 30.0))
        cav = R.Cavity(L=L, z0=float(rng.uniform(0.05, 0.95)) * L)
        T = float(rng.uniform(0.5, 2.0))
        closed = R.single_atom_rate(det, R.ThermalBath(T), cav, "up").rate
        brute = O.mode_sum_rate(det, T, cav, None, "up").rate
        worst = max(worst, abs(brute - closed) / abs(closed))
    out.append(CheckResult("oracle", "mode sum vs closed form, 20 random single-atom cavities",
                           worst < 1e-6, worst, 1e-6))

    worst = 0.0
    thetas = [0.0, math.pi / 4, 3 * math.pi / 4] + [float(rng.uniform(0, math.pi)) for _ in range(7)]
    for theta in thetas:
        L = float(rng.uniform(3.2, 30.0))
        z0 = float(rng.uniform(0.05, 0.6)) * L
        d = float(rng.uniform(0.05, 0.8)) * (L - z0)
        cav = R.Cavity(L=L, z0=z0)
        cfg = R.TwoAtomConfig(theta=theta, d=d)
        closed = R.two_atom_rate(det, R.ThermalBath(1.0), cav, cfg, "up").geometric_factor
        brute = O.mode_sum_rate(det, 1.0, cav, cfg, "up").geometric_factor
        scale = max(abs(closed), det.omega0 / TWO_PI)
        worst = max(worst, abs(brute - closed) / scale)
    out.append(CheckResult("oracle", "mode sum vs closed form, 10 two-atom geometric factors",
                           worst < 1e-6, worst, 1e-6))

    worst = 0.0
    for dE, T in ((1.0, 1.0), (1.0, 0.5), (-1.0, 1.0), (-1.0, 2.0)):
        fr = O.fourier_response(R.ThermalBath(T), R.FreeSpace(), dE)
        nbar = K.planck_occupation(abs(dE) / T)
        exact = (abs(dE) / TWO_PI) * (nbar if dE > 0 else 1.0 + nbar)
        worst = max(worst, abs(fr - exact) / exact)
    out.append(CheckResult("oracle", "Fourier response vs free-space closed form",
                           worst < 1e-3, worst, 1e-3))

    weights = O.mode_weights(det, R.Cavity(L=17.3, z0=4.1),
                             R.TwoAtomConfig(theta=2.1, d=3.3))
    wmin = float(np.min(weights)) if weights.size else 0.0
    out.append(CheckResult("oracle", "every per-mode contribution is nonnegative",
                           wmin >= 0.0, wmin, 0.0))

    worst = 0.0
    for L in (math.pi - 1e-3, math.pi + 1e-3):
        cav = R.Cavity(L=L, z0=0.37 * L)
        closed = R.single_atom_rate(det, R.ThermalBath(1.0), cav, "up").rate
        brute = O.mode_sum_rate(det, 1.0, cav, None, "up").rate
        scale = max(abs(closed), 1e-6)
        worst = max(worst, abs(brute - closed) / scale)
    out.append(CheckResult("oracle", "mode-count step at w0*L = pi crossed consistently",
                           worst < 1e-6, worst, 1e-6))
    return out


def check_wightman(seed: int = 4242) -> list[CheckResult]:
    """Representation identity, KMS, Hermiticity, Dirichlet walls."""
    out = []
    rng = np.random.default_rng(seed)
    reg = W.RegulatorSpec(epsilon=1e-12)

    worst = 0.0
    for _ in range(20):
        dt = float(rng.uniform(-1.5, 1.5))
        r = float(rng.uniform(0.3, 2.5))
        if abs(abs(dt) - r) < 0.15:
            r += 0.3
        beta = float(rng.uniform(0.5, 2.5))
        sep = W.SpacetimeSeparation(dt=dt, dx=r)
        gs = W.thermal_wightman_series(sep, beta, reg)
        gc = W.thermal_wightman_coth(sep, beta, reg)
        worst = max(worst, abs(gs - gc) / abs(gc))
    out.append(CheckResult("wightman", "series vs coth representation, 20-point grid",
                           worst < 1e-10, worst, 1e-10))

    worst = 0.0
    for _ in range(20):
        dt = float(rng.uniform(0.05, 1.0))
        r = float(rng.uniform(1.6, 2.6))
        beta = float(rng.uniform(0.6, 2.0))
        g1 = W.thermal_wightman_series(W.SpacetimeSeparation(dt=dt - 1j * beta, dx=r), beta, reg)
        g2 = W.thermal_wightman_series(W.SpacetimeSeparation(dt=-dt, dx=r), beta, reg)
        worst = max(worst, abs(g1 - g2) / abs(g2))
    out.append(CheckResult("wightman", "KMS shift dt -> dt - i*beta, 20-point grid",
                           worst < 1e-10, worst, 1e-10))

    worst = 0.0
    for _ in range(20):
        dt = float(rng.uniform(-1.2, 1.2))
        r = float(rng.uniform(0.3, 2.5))
        if abs(abs(dt) - r) < 0.15:
            r += 0.3
        beta = float(rng.uniform(0.5, 2.5))
        g1 = W.thermal_wightman_series(W.SpacetimeSeparation(dt=dt, dx=r), beta, reg)
        g2 = W.thermal_wightman_series(W.SpacetimeSeparation(dt=-dt, dx=r), beta, reg)
        worst = max(worst, abs(g1.conjugate() - g2) / abs(g2))
    out.append(CheckResult("wightman", "Hermiticity G(dt)* = G(-dt)",
                           worst < 1e-12, worst, 1e-12))

    worst = 0.0
    L = 1.7
    for _ in range(20):
        z = float(rng.uniform(0.1, 0.9)) * L
        wall = L if rng.random() < 0.5 else 0.0
        sep = W.SpacetimeSeparation(dt=float(rng.uniform(-0.8, 0.8)),
                                    dx=float(rng.uniform(0.2, 1.0)), z1=wall, z2=z)
        g = W.cavity_thermal_wightman(sep, 1.0, L, reg)
        worst = max(worst, abs(g))
    out.append(CheckResult("wightman", "cavity function vanishes on the walls",
                           worst < 1e-12, worst, 1e-12))
    return out


SUITES = {
    "balance": check_balance,
    "equivalence": check_equivalence,
    "limits": check_limits,
    "oracle": check_oracle,
    "wightman": check_wightman,
}


def run_suite(name: str) -> list[CheckResult]:
    """Run one named suite, or all of them."""
    if name == "all":
        results = []
        for fn in SUITES.values():
            results.extend(fn())
        return results
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name]()
