"""Period representations and the rotation number.

Every representation computes the same tau-time oscillation period on its own
domain; overlaps are cross-checked in the test suite:

* t_down: integral over the full radial interval [0, 2], below the singular
  line;
* t_up: integral over [0, x_minus] (x_minus the smaller root of the radial
  quadratic), above the singular line, with its unit-interval reparametrized
  twin as an internal consistency check;
* t_star: smooth angular form on the strip |F0_hat| < M * delta0_hat;
* t_circ: smooth angular form built from the effective eccentricity, valid
  up to F0_hat = M^2 + delta0_hat^2/4;
* t_general_e_omega: the two-parameter angular family, constant on the
  solution set of the (e, omega) constraint;
* jacobi_t_plus / jacobi_t_minus: direct quadrature between turning points of
  the separated one-degree-of-freedom motions.

Prefactor bookkeeping: all values carry sqrt(2|J0|) with |J0| recovered from
NormalizedParams as delta0_hat / (4 v0).  The *_normalized helpers drop that
prefactor and take the homogeneity-friendly arguments (a, b, c) =
(M^2, delta0_hat^2, F0_hat).
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ComplexEccentricity,
    ConstraintViolated,
    OutOfDomain,
    RepresentationMismatch,
)
from .param_domain import (
    MassChoice,
    NormalizedParams,
    Region,
    WRegion,
    classify,
    classify_mass,
    normalize,
    quadratic_roots,
    turning_points,
)
from .quadrature import (
    DEFAULT_SPEC,
    KernelIntegrand,
    integrate_periodic,
    tanh_sinh_with_history,
)

__all__ = [
    "Representation",
    "PeriodStatus",
    "PeriodResult",
    "RotationNumberResult",
    "t_down",
    "t_up",
    "t_of",
    "t_star",
    "t_circ",
    "t_general_e_omega",
    "jacobi_t_plus",
    "jacobi_t_minus",
    "rotation_number",
    "t_down_normalized",
    "t_up_normalized",
    "e_omega_solutions",
]

# internal agreement required between the two t_up parametrizations
_TUP_XCHECK_RTOL = 1e-8


class Representation(Enum):
    TDOWN = "TDown"
    TUP = "TUp"
    TSTAR = "TStar"
    TCIRC = "TCirc"
    TGENERAL = "TGeneralEOmega"
    JACOBI_ALPHA = "JacobiAlpha"
    JACOBI_BETA = "JacobiBeta"


class PeriodStatus(Enum):
    OK = "Ok"
    DIVERGING = "Diverging"
    OUT_OF_DOMAIN = "OutOfDomain"


@dataclass(frozen=True)
class PeriodResult:
    value: float
    err_estimate: float
    representation: Representation
    status: PeriodStatus

    @property
    def ok(self):
        return self.status == PeriodStatus.OK


@dataclass(frozen=True)
class RotationNumberResult:
    W: float
    branch: str
    T_plus: PeriodResult
    T_minus: PeriodResult


def _diverging(rep):
    return PeriodResult(math.inf, math.inf, rep, PeriodStatus.DIVERGING)


def _out_of_domain(rep):
    return PeriodResult(math.nan, math.nan, rep, PeriodStatus.OUT_OF_DOMAIN)


def _growth_threshold(n):
    # partial T-values past this without convergence count as divergence
    return 1e6 * n.prefactor / n.delta0_hat


def _monotone_growth(values):
    return len(values) >= 3 and all(b > a for a, b in zip(values, values[1:]))


# ---------------------------------------------------------------------------
# the two line-integral representations

def t_down(n, spec=None):
    """Full-interval radial representation, domain F0_hat < f_sing."""
    spec = spec or DEFAULT_SPEC
    region = classify_mass(n.M, n.delta0_hat, n.F0_hat)
    if region == Region.ON_SINGULAR:
        return _diverging(Representation.TDOWN)
    if region != Region.PDOWN:
        return _out_of_domain(Representation.TDOWN)
    f = KernelIntegrand("quartic", (n.M**2, -2.0 * n.F0_hat, n.delta0_hat**2))
    res, history = tanh_sinh_with_history(f, 0.0, 2.0, spec)
    scale = 2.0 * n.prefactor
    if not res.converged and _monotone_growth(history) \
            and scale * history[-1] > _growth_threshold(n):
        return _diverging(Representation.TDOWN)
    return PeriodResult(scale * res.value, scale * res.err_estimate,
                        Representation.TDOWN, PeriodStatus.OK)


def t_up(n, spec=None):
    """Truncated radial representation, domain F0_hat > f_sing.

    Both the [0, x_minus] form and its unit-interval reparametrization are
    evaluated; they must agree to 1e-8 relative, and the reparametrized value
    is returned.
    """
    spec = spec or DEFAULT_SPEC
    region = classify_mass(n.M, n.delta0_hat, n.F0_hat)
    if region == Region.ON_SINGULAR:
        return _diverging(Representation.TUP)
    if region != Region.PUP:
        return _out_of_domain(Representation.TUP)
    scale = 4.0 * n.prefactor
    if n.M == 0.0:
        # the radial quadratic degenerates to -2 Fh x + dh^2: one turning
        # point at dh^2 / (2 Fh) and a constant far factor
        xm = n.delta0_hat**2 / (2.0 * n.F0_hat)
        gap2 = 2.0 - xm
        f_x = KernelIntegrand(
            "four_factor", (2.0 * n.F0_hat * gap2, 2.0 * n.F0_hat, 1.0, 0.0))
        res_x, hist = tanh_sinh_with_history(f_x, 0.0, xm, spec)
        f_t = KernelIntegrand(
            "four_factor",
            (2.0 * n.F0_hat * gap2, 2.0 * n.F0_hat * xm, 1.0, 0.0))
        res_t, _ = tanh_sinh_with_history(f_t, 0.0, 1.0, spec)
    else:
        m2 = n.M**2
        xm, xp = quadratic_roots(n.M, n.F0_hat, n.delta0_hat)
        gap2 = 2.0 - xm    # distance from the turning point to the far zero
        gapx = xp - xm
        # x-form on [0, x_minus]: factors x, (x_minus-x), (2-x), (x_plus-x)
        f_x = KernelIntegrand("four_factor", (m2 * gap2, m2, gapx, 1.0))
        res_x, hist = tanh_sinh_with_history(f_x, 0.0, xm, spec)
        # t-form on [0, 1] after x = x_minus * t
        f_t = KernelIntegrand("four_factor", (m2 * gap2, m2 * xm, gapx, xm))
        res_t, _ = tanh_sinh_with_history(f_t, 0.0, 1.0, spec)

    val_x = scale * res_x.value
    val_t = scale * res_t.value
    if not res_t.converged and _monotone_growth(hist) \
            and val_t > _growth_threshold(n):
        return _diverging(Representation.TUP)
    if abs(val_x - val_t) > _TUP_XCHECK_RTOL * abs(val_t):
        raise RepresentationMismatch(
            f"t_up parametrizations disagree: {val_x!r} vs {val_t!r}")
    return PeriodResult(val_t, scale * res_t.err_estimate,
                        Representation.TUP, PeriodStatus.OK)


def t_of(n, spec=None):
    """Dispatch on the region: t_down below the singular line, t_up above,
    a Diverging result on it."""
    region = classify_mass(n.M, n.delta0_hat, n.F0_hat)
    if region == Region.ON_SINGULAR:
        return _diverging(Representation.TDOWN)
    if region == Region.PDOWN:
        return t_down(n, spec)
    return t_up(n, spec)


# ---------------------------------------------------------------------------
# smooth angular representations

def t_star(n, spec=None):
    """Angular form on the strip |F0_hat| < M * delta0_hat."""
    spec = spec or DEFAULT_SPEC
    if not abs(n.F0_hat) < n.M * n.delta0_hat:
        return _out_of_domain(Representation.TSTAR)
    m2, fh, d2 = n.M**2, n.F0_hat, n.delta0_hat**2

    def f(xi):
        u = 1.0 - np.cos(xi)
        return 1.0 / np.sqrt((m2 * u - 2.0 * fh) * u + d2)

    res = integrate_periodic(f, spec)
    return PeriodResult(n.prefactor * res.value, n.prefactor * res.err_estimate,
                        Representation.TSTAR, PeriodStatus.OK)


def eccentricity_sigma(M, delta0_hat, F0_hat):
    """Effective eccentricity e_hat and branch sign sigma.

    sigma switches from +1 to -1 at F0_hat = M^2 (where e_hat = 0); the
    radicand must be nonnegative, i.e. F0_hat <= M^2 + delta0_hat^2/4.
    """
    rad = M * M + 0.25 * delta0_hat**2 - F0_hat
    if rad < 0.0:
        raise ComplexEccentricity(
            f"F0_hat = {F0_hat:.6g} exceeds M^2 + delta0_hat^2/4 = "
            f"{M * M + 0.25 * delta0_hat**2:.6g}")
    sigma = 1.0 if F0_hat < M * M else -1.0
    e_hat = -sigma * 0.5 * delta0_hat + sigma * math.sqrt(rad)
    return e_hat, sigma


def _t_circ_branch(n, e_hat, sigma, spec):
    M, dh = n.M, n.delta0_hat
    c2 = e_hat**2
    c1 = -2.0 * M * (e_hat + sigma * dh)
    c0 = M * M + 2.0 * sigma * e_hat * dh + dh * dh

    def f(xi):
        c = np.cos(xi)
        return 1.0 / np.sqrt((c2 * c + c1) * c + c0)

    return integrate_periodic(f, spec)


def t_circ(n, spec=None):
    """Eccentricity-based angular form; valid off the singular line wherever
    the effective eccentricity is real.

    At the branch point F0_hat = M^2 both sigma branches are evaluated and
    must agree.
    """
    spec = spec or DEFAULT_SPEC
    region = classify_mass(n.M, n.delta0_hat, n.F0_hat)
    if region == Region.ON_SINGULAR:
        return _diverging(Representation.TCIRC)
    e_hat, sigma = eccentricity_sigma(n.M, n.delta0_hat, n.F0_hat)
    res = _t_circ_branch(n, e_hat, sigma, spec)
    if n.F0_hat == n.M**2:
        alt = _t_circ_branch(n, -e_hat, -sigma, spec)
        if abs(alt.value - res.value) > 1e-9 * abs(res.value):
            raise RepresentationMismatch(
                "sigma branches disagree at the F0_hat = M^2 branch point")
    return PeriodResult(n.prefactor * res.value, n.prefactor * res.err_estimate,
                        Representation.TCIRC, PeriodStatus.OK)


def constraint_residual(n, e, omega):
    """Residual of (1 - e^2) - (delta0_hat/M) e sin(omega) = F0_hat / M^2."""
    return (1.0 - e * e) - (n.delta0_hat / n.M) * e * math.sin(omega) \
        - n.F0_hat / n.M**2


def t_general_e_omega(n, e, omega, spec=None):
    """Two-parameter angular representation.

    (e, omega) must satisfy the constraint to 1e-10; the value is independent
    of which solution was supplied.
    """
    spec = spec or DEFAULT_SPEC
    if n.M <= 0.0:
        raise OutOfDomain("t_general_e_omega needs M > 0")
    if not 0.0 <= e <= 1.0:
        raise ConstraintViolated(f"eccentricity {e} outside [0, 1]")
    resid = constraint_residual(n, e, omega)
    if abs(resid) > 1e-10 * max(1.0, abs(n.F0_hat / n.M**2)):
        raise ConstraintViolated(
            f"(e, omega) = ({e}, {omega}) misses the constraint by {resid:.3e}")
    M, dh = n.M, n.delta0_hat
    root = math.sqrt(max(0.0, 1.0 - e * e))
    so, co = math.sin(omega), math.cos(omega)

    def f(xi):
        c, s = np.cos(xi), np.sin(xi)
        rad = M * M * (1.0 - e * c) ** 2 \
            - 2.0 * M * dh * (root * s * co + (c - e) * so) + dh * dh
        return 1.0 / np.sqrt(rad)

    res = integrate_periodic(f, spec)
    return PeriodResult(n.prefactor * res.value, n.prefactor * res.err_estimate,
                        Representation.TGENERAL, PeriodStatus.OK)


def e_omega_solutions(n, count=3):
    """count distinct (e, omega) pairs satisfying the constraint.

    Solving |M^2 (1 - e^2) - F0_hat| <= M delta0_hat e for e gives the
    admissible interval [|R - dh|, min(2M, R + dh)] / (2M) with
    R = sqrt(dh^2 + 4(M^2 - F0_hat)); its lower endpoint is the effective
    eccentricity of t_circ and e = 1 is admissible exactly on the t_star
    strip.  Interior eccentricities are sampled uniformly and each one
    contributes both omega and pi - omega.
    """
    M, dh, fh = n.M, n.delta0_hat, n.F0_hat
    rad = dh * dh + 4.0 * (M * M - fh)
    if rad < 0.0:
        raise OutOfDomain("no real (e, omega) solutions: F0_hat above the band")
    R = math.sqrt(rad)
    e_lo = abs(R - dh) / (2.0 * M)
    e_hi = min(1.0, (R + dh) / (2.0 * M))
    if e_hi < e_lo:
        raise OutOfDomain("empty eccentricity interval: point outside the band")
    out = []
    for e in np.linspace(e_lo, e_hi, count + 2)[1:-1]:
        e = float(e)
        if e <= 0.0:
            out.append((0.0, 0.0))
            continue
        s = ((1.0 - e * e) - fh / (M * M)) * M / (dh * e)
        om = math.asin(min(1.0, max(-1.0, s)))
        out.append((e, om))
        if abs(math.cos(om)) > 1e-12:
            out.append((e, math.pi - om))
    return out[:count] if len(out) >= count else out


# ---------------------------------------------------------------------------
# direct Jacobi quadrature between turning points

def jacobi_t_plus(p, spec=None):
    """Radial Jacobi period by quadrature between the alpha turning points."""
    spec = spec or DEFAULT_SPEC
    tp = turning_points(p.M_plus, p.M_minus, p.J0, p.v0, p.F0)
    n = normalize(p, MassChoice.PLUS)
    if classify_mass(n.M, n.delta0_hat, n.F0_hat) == Region.ON_SINGULAR:
        return _diverging(Representation.JACOBI_ALPHA)
    lo, hi = tp.alpha_range
    f = KernelIntegrand("jacobi_alpha", (lo - 1.0, lo + 1.0, lo - tp.alpha_minus))
    res, hist = tanh_sinh_with_history(f, lo, hi, spec)
    scale = 4.0 * n.prefactor / n.delta0_hat
    if not res.converged and _monotone_growth(hist) \
            and scale * hist[-1] > _growth_threshold(n):
        return _diverging(Representation.JACOBI_ALPHA)
    return PeriodResult(scale * res.value, scale * res.err_estimate,
                        Representation.JACOBI_ALPHA, PeriodStatus.OK)


def jacobi_t_minus(p, spec=None):
    """Angular Jacobi periods, one per connected beta libration component."""
    spec = spec or DEFAULT_SPEC
    tp = turning_points(p.M_plus, p.M_minus, p.J0, p.v0, p.F0)
    n = normalize(p, MassChoice.MINUS)
    dh, fh = n.delta0_hat, n.F0_hat
    if classify_mass(n.M, dh, fh) == Region.ON_SINGULAR:
        return [_diverging(Representation.JACOBI_BETA)
                for _ in tp.beta_components]
    out = []
    for lo, hi in tp.beta_components:
        if tp.beta_minus is None or not (-1.0 < tp.beta_minus < 1.0 or
                                         -1.0 < tp.beta_plus < 1.0):
            # no root inside (-1,1): radicand (1 - b^2) q(b) with q > 0 inside
            f = KernelIntegrand(
                "quartic", (dh * dh, -4.0 * n.M * dh, 4.0 * fh - dh * dh))
            scale = 4.0 * n.prefactor
        elif lo == -1.0:
            # component (-1, beta_minus): singular factors (1+b), (beta_minus-b)
            f = KernelIntegrand(
                "four_factor",
                (1.0 - tp.beta_minus, 1.0, tp.beta_plus - tp.beta_minus, 1.0))
            scale = 4.0 * n.prefactor / dh
        else:
            # component (beta_plus, 1): singular factors (b-beta_plus), (1-b)
            f = KernelIntegrand(
                "jacobi_beta",
                (1.0 + tp.beta_plus, 1.0, tp.beta_plus - tp.beta_minus, 1.0))
            scale = 4.0 * n.prefactor / dh
        res, hist = tanh_sinh_with_history(f, lo, hi, spec)
        if not res.converged and _monotone_growth(hist) \
                and scale * hist[-1] > _growth_threshold(n):
            out.append(_diverging(Representation.JACOBI_BETA))
            continue
        out.append(PeriodResult(scale * res.value, scale * res.err_estimate,
                                Representation.JACOBI_BETA, PeriodStatus.OK))
    return out


# ---------------------------------------------------------------------------
# rotation number

_BRANCH_OF = {WRegion.DS: "WS", WRegion.DL: "WL", WRegion.DP: "WP"}


def rotation_number(p, spec=None):
    """W = T_minus / T_plus with both periods taken from the extension
    formulas (t_of) at the respective mass sums."""
    label = classify(p.M_plus, p.M_minus, -4.0 * p.v0 * p.J0, -2.0 * p.J0 * p.F0)
    if label.w_region not in _BRANCH_OF:
        raise OutOfDomain(f"point is {label.w_region} for the rotation number")
    tp = t_of(normalize(p, MassChoice.PLUS), spec)
    tm = t_of(normalize(p, MassChoice.MINUS), spec)
    W = tm.value / tp.value if (tp.ok and tm.ok) else math.nan
    return RotationNumberResult(W, _BRANCH_OF[label.w_region], tp, tm)


# ---------------------------------------------------------------------------
# normalized forms on (a, b, c) = (M^2, delta0_hat^2, F0_hat)

def t_down_normalized(a, b, c, spec=None):
    """2 * integral_0^2 dx / sqrt(x(2-x)(a x^2 - 2 c x + b)); prefactor-free."""
    spec = spec or DEFAULT_SPEC
    f = KernelIntegrand("quartic", (a, -2.0 * c, b))
    res, _ = tanh_sinh_with_history(f, 0.0, 2.0, spec)
    return 2.0 * res.value


def t_up_normalized(a, b, c, spec=None):
    """4 * integral_0^{x_minus} of the same integrand; prefactor-free."""
    spec = spec or DEFAULT_SPEC
    s = math.sqrt(c * c - a * b)
    xm = (c - s) / a
    xp = (c + s) / a
    f = KernelIntegrand("four_factor", (a * (2.0 - xm), a, xp - xm, 1.0))
    res, _ = tanh_sinh_with_history(f, 0.0, xm, spec)
    return 4.0 * res.value
