"""Numerical verification of the monotonicity results.

Fiber scans sample the periods and rotation number along F0_hat at fixed
delta0_hat and classify central-difference signs per region; divergence
probes approach the singular line from both sides; the S functionals decide
the second-derivative positivity questions behind the rotation-number
monotonicity; the Chebyshev integral inequality is the comparison engine the
boundary arguments rest on.

All S-functional work happens on normalized periods (a, b, c) =
(M^2, delta0_hat^2, F0_hat) with the sqrt(2|J0|) prefactor removed: the
rotation number is a ratio, so the prefactor cancels, and the normalized
forms are cleanly homogeneous (degree -1/2 for the period, -3 for S).
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import MonotonicityViolated, OutOfDomain, RepresentationMismatch
from .param_domain import NormalizedParams, WRegion, classify, f_sing
from .period_engine import t_of, t_up_normalized
from .quadrature import (
    DEFAULT_SPEC,
    KernelIntegrand,
    integrate_double,
    tanh_sinh_with_history,
)

__all__ = [
    "FiberScan",
    "SFunctionalSample",
    "SLocation",
    "scan_fiber",
    "divergence_probe",
    "log_slopes",
    "s_up",
    "s_up_finite_difference",
    "s_down",
    "chebyshev_check",
    "kernel_f",
    "kernel_g",
    "kernel_p",
    "kernel_monotonicity",
]

# sign threshold for central differences (relative to the local value scale)
_SIGN_RTOL = 1e-9

# required agreement between the kernel and finite-difference S values
_S_AGREE_RTOL = 1e-5


class SLocation(Enum):
    NEAR_M1 = "NearM1"
    NEAR_M2 = "NearM2"
    NEAR_M3 = "NearM3"
    NEAR_M4 = "NearM4"
    INTERIOR = "Interior"


@dataclass(frozen=True)
class SFunctionalSample:
    a: float
    b: float
    c: float
    S_value: float
    location: SLocation


@dataclass(frozen=True)
class FiberScan:
    """Samples of (T_plus, T_minus, W) along one F0_hat fiber.

    Arrays are aligned with F0_values; sign arrays hold +1/-1/0 at interior
    points whose neighbors share the region and 0 elsewhere (sign_valid
    marks which entries are meaningful).  verdicts maps (quantity, region)
    to 'increasing', 'decreasing', 'violation' or 'insufficient'.
    """

    M_plus: float
    M_minus: float
    delta0_hat: float
    F0_values: np.ndarray
    T_plus: np.ndarray
    T_minus: np.ndarray
    W: np.ndarray
    regions: tuple
    dT_plus_signs: np.ndarray
    dT_minus_signs: np.ndarray
    dW_signs: np.ndarray
    sign_valid: np.ndarray
    verdicts: dict


def _diff_signs(values, f0s, regions, valid_regions):
    n = values.size
    signs = np.zeros(n, dtype=np.int8)
    ok = np.zeros(n, dtype=bool)
    for i in range(1, n - 1):
        r = regions[i]
        if r not in valid_regions or regions[i - 1] != r or regions[i + 1] != r:
            continue
        if not (np.isfinite(values[i - 1]) and np.isfinite(values[i + 1])):
            continue
        d = values[i + 1] - values[i - 1]
        scale = max(abs(values[i + 1]), abs(values[i - 1]), 1e-300)
        ok[i] = True
        if abs(d) <= _SIGN_RTOL * scale:
            signs[i] = 0
        else:
            signs[i] = 1 if d > 0 else -1
    return signs, ok


def _verdict(signs, ok, regions, region):
    picked = [int(s) for s, o, r in zip(signs, ok, regions) if o and r == region]
    if not picked:
        return "insufficient"
    if all(s > 0 for s in picked):
        return "increasing"
    if all(s < 0 for s in picked):
        return "decreasing"
    return "violation"


def scan_fiber(M_plus, M_minus, delta0_hat, F0_range, n_samples, v0=1.0,
               spec=None):
    """Sample T_plus, T_minus and W on n_samples points of an F0_hat fiber."""
    if n_samples < 3:
        raise ValueError("need n_samples >= 3")
    spec = spec or DEFAULT_SPEC
    f0s = np.linspace(F0_range[0], F0_range[1], n_samples)
    tp = np.full(n_samples, np.nan)
    tm = np.full(n_samples, np.nan)
    regions = []
    for i, fh in enumerate(f0s):
        label = classify(M_plus, M_minus, delta0_hat, fh)
        regions.append(label.w_region.value)
        if label.w_region in (WRegion.DS, WRegion.DL, WRegion.DP):
            rp = t_of(NormalizedParams(M_plus, delta0_hat, fh, v0), spec)
            rm = t_of(NormalizedParams(M_minus, delta0_hat, fh, v0), spec)
            if rp.ok:
                tp[i] = rp.value
            if rm.ok:
                tm[i] = rm.value
    with np.errstate(invalid="ignore", divide="ignore"):
        w = tm / tp
    regions = tuple(regions)
    live = {"DS", "DL", "DP"}
    sp, okp = _diff_signs(tp, f0s, regions, live)
    sm, okm = _diff_signs(tm, f0s, regions, live)
    sw, okw = _diff_signs(w, f0s, regions, live)
    verdicts = {}
    for region in sorted(set(regions) & live):
        verdicts[("T_plus", region)] = _verdict(sp, okp, regions, region)
        verdicts[("T_minus", region)] = _verdict(sm, okm, regions, region)
        verdicts[("W", region)] = _verdict(sw, okw, regions, region)
    return FiberScan(M_plus, M_minus, delta0_hat, f0s, tp, tm, w, regions,
                     sp, sm, sw, okp | okm | okw, verdicts)


def divergence_probe(M, delta0_hat, side, eps_sequence, v0=1.0, spec=None):
    """Periods at F0_hat = f_sing -+ eps for a decreasing eps sequence.

    side is 'Below' (t_down values) or 'Above' (t_up values); returns a list
    of (eps, T) pairs.  Divergence shows as strict growth along the list;
    log_slopes quantifies the rate.
    """
    eps_sequence = list(eps_sequence)
    if not all(e > 0 for e in eps_sequence):
        raise ValueError("eps values must be positive")
    if any(b >= a for a, b in zip(eps_sequence, eps_sequence[1:])):
        raise ValueError("eps sequence must be strictly decreasing")
    fs = f_sing(M, delta0_hat)
    out = []
    for eps in eps_sequence:
        fh = fs - eps if side == "Below" else fs + eps
        res = t_of(NormalizedParams(M, delta0_hat, fh, v0), spec)
        out.append((eps, res.value))
    return out


def log_slopes(pairs):
    """Growth of T per unit log(1/eps) between consecutive probe points;
    roughly constant for a logarithmic blowup."""
    out = []
    for (e1, t1), (e2, t2) in zip(pairs, pairs[1:]):
        out.append((t2 - t1) / (math.log(1.0 / e2) - math.log(1.0 / e1)))
    return out


# ---------------------------------------------------------------------------
# kernels of the reparametrized period integral

def _require_real_kernel(a, b, c):
    if c * c <= a * b:
        from .errors import ComplexRadicand
        raise ComplexRadicand(
            f"c^2 = {c * c:.6g} <= a b = {a * b:.6g}: kernel radical complex")


def _denominator(a, b, c, tau):
    s = math.sqrt(c * c - a * b)
    return 2.0 * c - b + 2.0 * s - (2.0 * c - b - 2.0 * s) * tau


def kernel_f(a, b, c, tau):
    """Quotient kernel driving the F0_hat derivative; increasing on [0,1]
    exactly when c <= 2a."""
    _require_real_kernel(a, b, c)
    s = math.sqrt(c * c - a * b)
    return (c + s + (c - s) * tau) / _denominator(a, b, c, tau)


def kernel_g(a, b, c, tau):
    """Quotient kernel driving the M^2 derivative; increasing on [0,1]
    exactly when c >= b/2."""
    _require_real_kernel(a, b, c)
    return (1.0 + tau) / _denominator(a, b, c, tau)


def kernel_p(a, b, c, tau):
    """Integrand of the reparametrized normalized period: integrating it
    over [0, 1] reproduces t_up_normalized."""
    _require_real_kernel(a, b, c)
    return 4.0 / np.sqrt(tau * (1.0 - tau) * _denominator(a, b, c, tau))


def kernel_monotonicity(a, b, c):
    """Monotonicity classification of the f and g kernels on [0, 1]."""
    _require_real_kernel(a, b, c)
    return {
        "f": "increasing" if c <= 2.0 * a else "decreasing",
        "g": "increasing" if c >= 0.5 * b else "decreasing",
    }


def _in_p_up(a, b, c):
    return a > 0.0 and b > 0.0 and c > f_sing(math.sqrt(a), math.sqrt(b))


def _in_p_down(a, b, c):
    return a > 0.0 and b > 0.0 and c < f_sing(math.sqrt(a), math.sqrt(b))


def _classify_location_up(a, b, c):
    scale = max(a, b, abs(c), 1e-300)
    d3 = abs(c - f_sing(math.sqrt(a), math.sqrt(b))) / scale
    cands = [(a / scale, SLocation.NEAR_M1), (b / scale, SLocation.NEAR_M2),
             (d3, SLocation.NEAR_M3)]
    d, loc = min(cands, key=lambda item: item[0])
    return loc if d < 0.05 else SLocation.INTERIOR


def _classify_location_down(a, b, c):
    scale = max(a, b, abs(c), 1e-300)
    cands = [(abs(c - math.sqrt(a * b)) / scale, SLocation.NEAR_M1),
             (abs(c - (a + 0.25 * b)) / scale, SLocation.NEAR_M2),
             (a / scale, SLocation.NEAR_M3),
             (b / scale, SLocation.NEAR_M4)]
    d, loc = min(cands, key=lambda item: item[0])
    return loc if d < 0.05 else SLocation.INTERIOR


def _p_factory(a, b, c):
    s = math.sqrt(c * c - a * b)
    A = 2.0 * c - b + 2.0 * s
    B = 2.0 * c - b - 2.0 * s

    def p3(tau, da, db):
        return 4.0 / np.sqrt(da * db * (A - B * tau))

    return p3


def _kernel_moments(a, b, c, spec):
    """1-D integrals of p, f p, g p, f g p over [0, 1]."""
    p3 = _p_factory(a, b, c)

    def make(weight):
        def f3(tau, da, db):
            return weight(tau) * p3(tau, da, db)
        return f3

    one = lambda tau: 1.0
    fk = lambda tau: kernel_f(a, b, c, tau)
    gk = lambda tau: kernel_g(a, b, c, tau)
    fgk = lambda tau: kernel_f(a, b, c, tau) * kernel_g(a, b, c, tau)
    out = {}
    for name, wfun in (("p", one), ("fp", fk), ("gp", gk), ("fgp", fgk)):
        res, _ = tanh_sinh_with_history(make(wfun), 0.0, 1.0, spec)
        out[name] = res.value
    return out


def s_up(a, b, c, spec=None, check=True):
    """Second-derivative functional of the normalized upper period.

    Assembled from the kernel double integrals; positivity on the upper
    region is what makes the rotation number increase there.  When check is
    set the value is compared against the finite-difference assembly and a
    RepresentationMismatch reports disagreement beyond 1e-5 relative.
    """
    spec = spec or DEFAULT_SPEC
    if not _in_p_up(a, b, c):
        raise OutOfDomain(f"(a, b, c) = ({a}, {b}, {c}) not interior to the "
                          "upper period region")
    s2 = c * c - a * b
    s = math.sqrt(s2)
    p3 = _p_factory(a, b, c)
    fk = lambda t: kernel_f(a, b, c, t)
    gk = lambda t: kernel_g(a, b, c, t)

    def dbl(wt, ww):
        def f6(t, w, dta, dtb, dwa, dwb):
            return wt(t) * p3(t, dta, dtb) * ww(w) * p3(w, dwa, dwb)
        return integrate_double(f6, ((0.0, 1.0), (0.0, 1.0)), spec).value

    one = lambda t: 1.0
    gpp = dbl(gk, one)                       # iint g(t) p(t) p(w)
    fgpp = dbl(lambda t: fk(t) * gk(t), one)  # iint f g(t) p(t) p(w)
    fp_gp = dbl(fk, gk)                      # iint f(t) g(w) p(t) p(w)

    s1 = (b * c / (2.0 * s2 * s)) * gpp
    s2hat = 3.0 * fgpp - fp_gp
    val = s1 + (b / (2.0 * s2)) * s2hat
    if check:
        fd = s_up_finite_difference(a, b, c, spec)
        if abs(val - fd) > _S_AGREE_RTOL * max(abs(val), abs(fd)):
            raise RepresentationMismatch(
                f"s_up kernel form {val!r} vs finite differences {fd!r}")
    return SFunctionalSample(a, b, c, val, _classify_location_up(a, b, c))


def s_up_finite_difference(a, b, c, spec=None):
    """(d_c T)(d_a T) - T d2_{ac} T by Richardson-extrapolated central
    differences of the normalized upper period.

    The step balances the ~1e-14 relative quadrature noise against the
    Richardson truncation error; 1e-4 keeps the mixed difference good to
    about six digits.
    """
    spec = spec or DEFAULT_SPEC
    T = lambda aa, cc: t_up_normalized(aa, b, cc, spec)
    hc = 1e-4 * max(1.0, abs(c))
    ha = min(1e-4 * max(1.0, abs(a)), 0.5 * a)   # keep a - h positive

    def dc(h):
        return (T(a, c + h) - T(a, c - h)) / (2.0 * h)

    def da(h):
        return (T(a + h, c) - T(a - h, c)) / (2.0 * h)

    def dac(h1, h2):
        return (T(a + h1, c + h2) - T(a + h1, c - h2)
                - T(a - h1, c + h2) + T(a - h1, c - h2)) / (4.0 * h1 * h2)

    rich = lambda f, h: (4.0 * f(h / 2.0) - f(h)) / 3.0
    d_c = rich(dc, hc)
    d_a = rich(da, ha)
    d_ac = (4.0 * dac(ha / 2.0, hc / 2.0) - dac(ha, hc)) / 3.0
    return d_c * d_a - T(a, c) * d_ac


def g_moment(a, b, c, k, m, spec=None):
    """Moment integral of x^(k - 1/2) (2 - x)^(-1/2) Q^(-(m + 1/2)) on [0, 2]
    with Q = a x^2 - 2 c x + b."""
    spec = spec or DEFAULT_SPEC
    f = KernelIntegrand("q_power", (k, m, a, -2.0 * c, b))
    res, _ = tanh_sinh_with_history(f, 0.0, 2.0, spec)
    return res.value


def s_down(a, b, c, spec=None):
    """Second-derivative functional of the normalized lower period, as the
    moment combination 3 g(3,2) g(0,0) - g(2,1) g(1,1)."""
    spec = spec or DEFAULT_SPEC
    if not _in_p_down(a, b, c):
        raise OutOfDomain(f"(a, b, c) = ({a}, {b}, {c}) not interior to the "
                          "lower period region")
    val = 3.0 * g_moment(a, b, c, 3, 2, spec) * g_moment(a, b, c, 0, 0, spec) \
        - g_moment(a, b, c, 2, 1, spec) * g_moment(a, b, c, 1, 1, spec)
    return SFunctionalSample(a, b, c, val, _classify_location_down(a, b, c))


def chebyshev_check(f_samples, g_samples, p_samples, grid, tol=1e-12):
    """Weighted Chebyshev comparison on a sample grid.

    Requires p >= 0 and f, g monotone in the same direction on the support
    of p; returns (lhs, rhs, holds) for
    lhs = (int f p)(int g p), rhs = (int f g p)(int p).
    """
    f = np.asarray(f_samples, dtype=float)
    g = np.asarray(g_samples, dtype=float)
    p = np.asarray(p_samples, dtype=float)
    x = np.asarray(grid, dtype=float)
    if np.any(p < 0.0):
        raise ValueError("weight p must be nonnegative")

    support = p > 0.0
    if support.sum() >= 2:
        scale_f = max(np.abs(f[support]).max(), 1e-300)
        scale_g = max(np.abs(g[support]).max(), 1e-300)
        df = np.diff(f[support])
        dg = np.diff(g[support])

        def direction(d, scale):
            if np.all(d >= -tol * scale):
                return 1
            if np.all(d <= tol * scale):
                return -1
            return 0

        dir_f = direction(df, scale_f)
        dir_g = direction(dg, scale_g)
        if dir_f == 0 or dir_g == 0 or dir_f != dir_g:
            raise MonotonicityViolated(
                "f and g must be monotone in the same direction on supp(p)")

    wf = np.trapezoid(f * p, x)
    wg = np.trapezoid(g * p, x)
    wfg = np.trapezoid(f * g * p, x)
    wp = np.trapezoid(p, x)
    lhs = wf * wg
    rhs = wfg * wp
    scale = max(abs(lhs), abs(rhs), 1.0)
    return lhs, rhs, bool(lhs <= rhs + tol * scale)
