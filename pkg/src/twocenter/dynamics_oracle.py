"""Direct integration of the planar two-center Hamiltonian.

Ground truth for the quadrature formulas: orbits are integrated in Cartesian
coordinates (centers at the origin and at (0, 2 v0)), the reparametrized time
tau accumulates as an extra state with d tau/dt = 1/(r_plus r_minus), and the
empirical tau-periods of the co-focal oscillations are read off turning-point
events.  The Kepler-side element conversions live here too since the m_minus=0
problem is the bridge between the two period families.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from ._backend import maybe_njit
from .errors import (
    CollisionApproach,
    CollisionSingularity,
    HyperbolicState,
    InsufficientOscillations,
    StepFailure,
)
from .param_domain import turning_points

__all__ = [
    "PhaseState",
    "TrajectorySample",
    "TrajectoryRun",
    "KeplerElements",
    "IntegratorControls",
    "EmpiricalPeriod",
    "hamiltonian",
    "euler_integral",
    "euler_integral_cofocal",
    "cofocal_coords",
    "cofocal_momenta",
    "initial_state",
    "integrate_orbit",
    "integrate_until_oscillations",
    "measure_tau_periods",
    "state_from_elements",
    "elements_from_state",
    "true_anomaly_of_state",
    "collision_classify",
]


@dataclass(frozen=True)
class PhaseState:
    """Momentum y and position x in the orbit plane; the second coordinate
    runs along the symmetry axis, so the centers sit at (0,0) and (0, 2 v0)."""

    y: tuple[float, float]
    x: tuple[float, float]


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    tau: float
    state: PhaseState
    alpha: float
    beta: float
    J_val: float
    F_val: float


@dataclass(frozen=True)
class TrajectoryRun:
    """Integrated orbit: dense samples plus the times (physical and
    reparametrized) of the detected turning points (maxima of alpha and of
    beta)."""

    samples: list
    alpha_max_taus: np.ndarray
    beta_max_taus: np.ndarray
    alpha_max_times: np.ndarray
    beta_max_times: np.ndarray
    t_end: float


@dataclass(frozen=True)
class KeplerElements:
    a: float
    e: float
    omega: float
    n: float


@dataclass(frozen=True)
class IntegratorControls:
    # 1e-13 keeps the first-integral drift under 1e-9 per ten oscillations
    # with margin; 1e-12 lands right at that budget
    rtol: float = 1e-13
    atol: float = 1e-13
    method: str = "DOP853"
    collision_radius_factor: float = 1e-6
    n_dense_samples: int = 1000


@dataclass(frozen=True)
class EmpiricalPeriod:
    value: float
    uncertainty: float
    n_cycles: int


def _rhs_core(s, mp, mm, v0):
    q1, q2, p1, p2 = s[0], s[1], s[2], s[3]
    r1 = math.hypot(q1, q2)
    r2 = math.hypot(q1, q2 - 2.0 * v0)
    ir13 = 1.0 / (r1 * r1 * r1)
    ir23 = 1.0 / (r2 * r2 * r2)
    out = np.empty(5)
    out[0] = p1
    out[1] = p2
    out[2] = -mp * q1 * ir13 - mm * q1 * ir23
    out[3] = -mp * q2 * ir13 - mm * (q2 - 2.0 * v0) * ir23
    out[4] = 1.0 / (r1 * r2)
    return out


_rhs_core = maybe_njit(_rhs_core)


def _radii(x, v0):
    r1 = math.hypot(x[0], x[1])
    r2 = math.hypot(x[0], x[1] - 2.0 * v0)
    return r1, r2


def hamiltonian(s, p):
    """Energy of the state: |y|^2/2 - m_plus/r_plus - m_minus/r_minus."""
    r1, r2 = _radii(s.x, p.v0)
    if r1 == 0.0 or r2 == 0.0:
        raise CollisionSingularity("state sits on an attracting center")
    return 0.5 * (s.y[0] ** 2 + s.y[1] ** 2) - p.m_plus / r1 - p.m_minus / r2


def euler_integral(s, p):
    """The commuting first integral, Cartesian form.

    g is the out-of-plane component of x cross y; the axis-projection of the
    bracketed vector reduces to the in-plane expression below.
    """
    r1, r2 = _radii(s.x, p.v0)
    if r1 == 0.0 or r2 == 0.0:
        raise CollisionSingularity("state sits on an attracting center")
    q1, q2 = s.x
    p1, p2 = s.y
    g = q2 * p1 - q1 * p2
    return g * g - 2.0 * p.v0 * (
        p1 * g - p.m_plus * q2 / r1 + p.m_minus * (q2 - 2.0 * p.v0) / r2)


def cofocal_coords(x, v0):
    """(alpha, beta) with alpha = (r_plus + r_minus)/(2 v0) >= 1 and
    beta = (r_plus - r_minus)/(2 v0) in [-1, 1]."""
    r1, r2 = _radii(x, v0)
    return (r1 + r2) / (2.0 * v0), (r1 - r2) / (2.0 * v0)


def _cofocal_jacobian(x, v0):
    """Rows: grad alpha, grad beta with respect to (q1, q2)."""
    q1, q2 = x
    r1, r2 = _radii(x, v0)
    e1 = (q1 / r1, q2 / r1)
    e2 = (q1 / r2, (q2 - 2.0 * v0) / r2)
    ga = ((e1[0] + e2[0]) / (2.0 * v0), (e1[1] + e2[1]) / (2.0 * v0))
    gb = ((e1[0] - e2[0]) / (2.0 * v0), (e1[1] - e2[1]) / (2.0 * v0))
    return ga, gb


def cofocal_momenta(s, p):
    """Momenta (A, B) conjugate to (alpha, beta): solve p = J^T (A, B) with
    J the Jacobian of (alpha, beta) in the plane coordinates."""
    ga, gb = _cofocal_jacobian(s.x, p.v0)
    jt = np.array([[ga[0], gb[0]], [ga[1], gb[1]]])
    A, B = np.linalg.solve(jt, np.asarray(s.y))
    return float(A), float(B)


def euler_integral_cofocal(s, p):
    """Co-focal form of the first integral; cross-checks the Cartesian one."""
    alpha, beta = cofocal_coords(s.x, p.v0)
    A, B = cofocal_momenta(s, p)
    a2, b2 = alpha * alpha, beta * beta
    return (B * B - A * A) * (a2 - 1.0) * (1.0 - b2) / (a2 - b2) \
        + 2.0 * p.m_plus * p.v0 * (alpha * beta + 1.0) / (alpha + beta) \
        - 2.0 * p.m_minus * p.v0 * (alpha * beta - 1.0) / (alpha - beta)


def initial_state(p, alpha0=None, beta0=None, component=None):
    """Exact state on the (J0, F0) level set.

    alpha0/beta0 default to the midpoints of the alpha libration interval and
    of the widest beta component (or the requested component index); the
    separated energy relations give the conjugate momenta directly, so no
    root-finding is involved.
    """
    tp = turning_points(p.M_plus, p.M_minus, p.J0, p.v0, p.F0)
    if alpha0 is None:
        lo, hi = tp.alpha_range
        alpha0 = 0.5 * (lo + hi)
    if beta0 is None:
        comps = tp.beta_components
        if component is None:
            component = max(range(len(comps)), key=lambda i: comps[i][1] - comps[i][0])
        lo, hi = comps[component]
        beta0 = 0.5 * (lo + hi)
    v0 = p.v0
    a2m1 = alpha0 * alpha0 - 1.0
    b2m1 = 1.0 - beta0 * beta0
    A2 = (2.0 * p.M_plus * v0 * alpha0 + 2.0 * p.J0 * v0 * v0 * a2m1 - p.F0) / a2m1
    B2 = (p.F0 - 2.0 * p.M_minus * v0 * beta0 + 2.0 * p.J0 * v0 * v0 * b2m1) / b2m1
    if A2 < 0.0 or B2 < 0.0:
        raise ValueError("(alpha0, beta0) outside the admissible region")
    A, B = math.sqrt(A2), math.sqrt(B2)
    q1 = v0 * math.sqrt(a2m1 * b2m1)
    q2 = v0 * (1.0 + alpha0 * beta0)
    ga, gb = _cofocal_jacobian((q1, q2), v0)
    p1 = A * ga[0] + B * gb[0]
    p2 = A * ga[1] + B * gb[1]
    return PhaseState(y=(p1, p2), x=(q1, q2))


def integrate_orbit(s0, p, t_end, controls=None):
    """Integrate the Hamiltonian flow with tau as an auxiliary state.

    Returns a TrajectoryRun with dense samples and the tau-times of the
    alpha/beta maxima located by the solver's event machinery.  Raises
    CollisionApproach if the orbit dips below the collision radius and
    StepFailure if the solver gives up.
    """
    controls = controls or IntegratorControls()
    mp, mm, v0 = p.m_plus, p.m_minus, p.v0
    r_min = controls.collision_radius_factor * v0

    def rhs(t, s):
        return _rhs_core(s, mp, mm, v0)

    def alpha_dot(t, s):
        q1, q2, p1, p2 = s[0], s[1], s[2], s[3]
        r1 = math.hypot(q1, q2)
        r2 = math.hypot(q1, q2 - 2.0 * v0)
        return (q1 * p1 + q2 * p2) / r1 + (q1 * p1 + (q2 - 2.0 * v0) * p2) / r2

    def beta_dot(t, s):
        q1, q2, p1, p2 = s[0], s[1], s[2], s[3]
        r1 = math.hypot(q1, q2)
        r2 = math.hypot(q1, q2 - 2.0 * v0)
        return (q1 * p1 + q2 * p2) / r1 - (q1 * p1 + (q2 - 2.0 * v0) * p2) / r2

    def proximity(t, s):
        r1 = math.hypot(s[0], s[1])
        r2 = math.hypot(s[0], s[1] - 2.0 * v0)
        return min(r1, r2) - r_min

    alpha_dot.direction = -1.0
    beta_dot.direction = -1.0
    proximity.terminal = True
    proximity.direction = -1.0

    state0 = np.array([s0.x[0], s0.x[1], s0.y[0], s0.y[1], 0.0])
    sol = solve_ivp(rhs, (0.0, t_end), state0, method=controls.method,
                    rtol=controls.rtol, atol=controls.atol,
                    events=[alpha_dot, beta_dot, proximity],
                    dense_output=True)
    if sol.status < 0:
        raise StepFailure(sol.message)
    if sol.status == 1 and sol.t_events[2].size:
        raise CollisionApproach(
            f"orbit reached r < {r_min:g} at t = {sol.t_events[2][0]:.6g}")

    def tau_at(times):
        return np.array([sol.sol(t)[4] for t in times])

    ts = np.linspace(0.0, sol.t[-1], controls.n_dense_samples)
    ys = sol.sol(ts)
    samples = []
    for k in range(ts.size):
        q1, q2, p1, p2, tau = ys[:, k]
        state = PhaseState(y=(p1, p2), x=(q1, q2))
        alpha, beta = cofocal_coords(state.x, v0)
        samples.append(TrajectorySample(
            t=float(ts[k]), tau=float(tau), state=state,
            alpha=alpha, beta=beta,
            J_val=hamiltonian(state, p), F_val=euler_integral(state, p)))
    return TrajectoryRun(
        samples=samples,
        alpha_max_taus=tau_at(sol.t_events[0]),
        beta_max_taus=tau_at(sol.t_events[1]),
        alpha_max_times=np.asarray(sol.t_events[0]),
        beta_max_times=np.asarray(sol.t_events[1]),
        t_end=float(sol.t[-1]),
    )


def oscillation_time_estimate(p):
    """Rough physical-time length of one radial oscillation (Kepler scale)."""
    a = p.M_plus / (2.0 * abs(p.J0))
    return 2.0 * math.pi * math.sqrt(a**3 / p.M_plus)


def integrate_until_oscillations(p, n_osc=10, controls=None, s0=None,
                                 max_doublings=4):
    """Integrate from a level-set state until both co-focal coordinates have
    completed at least n_osc oscillations."""
    controls = controls or IntegratorControls()
    s0 = s0 or initial_state(p)
    t_end = (n_osc + 2) * oscillation_time_estimate(p)
    for _ in range(max_doublings + 1):
        run = integrate_orbit(s0, p, t_end, controls)
        if run.alpha_max_taus.size > n_osc and run.beta_max_taus.size > n_osc:
            return run
        t_end *= 2.0
    return run


def measure_tau_periods(run):
    """Empirical tau-periods of the alpha and beta oscillations.

    Averages the spacings between successive same-direction turning points;
    needs at least three full cycles of each coordinate.
    """
    out = []
    for taus in (run.alpha_max_taus, run.beta_max_taus):
        if taus.size < 4:
            raise InsufficientOscillations(
                f"only {max(taus.size - 1, 0)} full cycles recorded; need >= 3")
        d = np.diff(taus)
        out.append(EmpiricalPeriod(
            value=float(d.mean()),
            uncertainty=float(d.std(ddof=1) / math.sqrt(d.size)),
            n_cycles=int(d.size)))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# Kepler elements (m_minus = 0)

def state_from_elements(el, p, nu):
    """Phase state on the Kepler orbit with the given elements at true
    anomaly nu; the perihelion angle is measured from the axis-perpendicular
    direction (first coordinate axis)."""
    if p.m_minus != 0.0:
        raise ValueError("Kepler elements require m_minus = 0")
    if not 0.0 <= el.e < 1.0:
        raise HyperbolicState(f"eccentricity {el.e} outside [0, 1)")
    M = p.m_plus
    ell = el.a * (1.0 - el.e**2)
    r = ell / (1.0 + el.e * math.cos(nu))
    th = el.omega + nu
    q = (r * math.cos(th), r * math.sin(th))
    vr = math.sqrt(M / ell) * el.e * math.sin(nu)
    vt = math.sqrt(M / ell) * (1.0 + el.e * math.cos(nu))
    ct, st = math.cos(th), math.sin(th)
    y = (vr * ct - vt * st, vr * st + vt * ct)
    return PhaseState(y=y, x=q)


def elements_from_state(s, p):
    """Invert state_from_elements; raises HyperbolicState for J >= 0."""
    if p.m_minus != 0.0:
        raise ValueError("Kepler elements require m_minus = 0")
    M = p.m_plus
    J = hamiltonian(s, p)
    if J >= 0.0:
        raise HyperbolicState(f"J = {J:.6g} >= 0")
    a = M / (2.0 * abs(J))
    q1, q2 = s.x
    p1, p2 = s.y
    r = math.hypot(q1, q2)
    L = q1 * p2 - q2 * p1                      # planar angular momentum
    ex = (p2 * L) / M - q1 / r
    ey = (-p1 * L) / M - q2 / r
    e = math.hypot(ex, ey)
    omega = math.atan2(ey, ex) if e > 0.0 else 0.0
    n = math.sqrt(M / a**3)
    return KeplerElements(a=a, e=e, omega=omega, n=n)


def true_anomaly_of_state(s, p):
    """True anomaly of a Kepler state, consistent with state_from_elements."""
    el = elements_from_state(s, p)
    th = math.atan2(s.x[1], s.x[0])
    nu = th - el.omega
    return math.atan2(math.sin(nu), math.cos(nu))


def collision_classify(p):
    """'MildlyCollisionFree' unless the m_minus = 0 orbit family passes
    through the second center, which happens exactly on the low branch of
    the singular line (F0_hat = M delta0_hat with delta0_hat < 2M)."""
    if p.J0 >= 0.0:
        raise ValueError("collision classification needs J0 < 0")
    M = p.m_plus
    dh = -4.0 * p.v0 * p.J0
    fh = -2.0 * p.J0 * p.F0
    on_line = abs(fh - M * dh) < 1e-12 * max(1.0, abs(M * dh))
    if on_line and dh < 2.0 * M:
        return "HitsSecondCenter"
    return "MildlyCollisionFree"
