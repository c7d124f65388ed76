"""Parameter algebra: normalization, singular and boundary curves, turning
points, and region classification for the planar two-fixed-center problem.

Conventions used throughout the package:

* physical data (m_plus, m_minus, v0, J0, F0) with m_plus >= m_minus >= 0,
  v0 > 0 and, for anything period-related, J0 < 0;
* mass sums M_plus = m_plus + m_minus, M_minus = m_plus - m_minus;
* normalized pair delta0_hat = -4 v0 J0 > 0, F0_hat = -2 J0 F0, on which all
  period formulas act; |J0| = delta0_hat / (4 v0) recovers the time scale.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import ComplexRoots, EmptyHillSet, NonNegativeEnergy

__all__ = [
    "SystemParams",
    "NormalizedParams",
    "RegionLabel",
    "TurningPoints",
    "Region",
    "WRegion",
    "MassChoice",
    "normalize",
    "f_sing",
    "f_sing_branch",
    "f_boundaries",
    "classify",
    "classify_mass",
    "singular_distance",
    "quadratic_roots",
    "turning_points",
    "ONSING_RTOL",
]

# a point counts as on the singular line when |F0_hat - f_sing| is below this
# relative tolerance; period integrals diverge there and exact float equality
# is useless
ONSING_RTOL = 1e-12

# relative discriminant threshold for declaring a double root
DOUBLE_ROOT_RTOL = 1e-14


class Region(Enum):
    PDOWN = "PDown"
    PUP = "PUp"
    ON_SINGULAR = "OnSingular"
    OUTSIDE = "Outside"


class WRegion(Enum):
    DS = "DS"
    DL = "DL"
    DP = "DP"
    ON_BOUNDARY = "OnBoundary"
    OUTSIDE = "Outside"


class MassChoice(Enum):
    PLUS = "Plus"
    MINUS = "Minus"
    CUSTOM = "Custom"


@dataclass(frozen=True)
class SystemParams:
    """Physical configuration: masses, center half-separation, energy level,
    Euler-integral level.  Theta0 is carried for completeness but must be 0;
    the package computes nothing off the invariant plane."""

    m_plus: float
    m_minus: float
    v0: float
    J0: float
    F0: float
    Theta0: float = 0.0

    def __post_init__(self):
        if not (self.m_plus >= self.m_minus >= 0.0):
            raise ValueError("need m_plus >= m_minus >= 0")
        if self.m_plus == 0.0 and self.m_minus == 0.0:
            raise ValueError("masses cannot both vanish")
        if not self.v0 > 0.0:
            raise ValueError("need v0 > 0")
        if self.Theta0 != 0.0:
            raise ValueError("only the planar problem (Theta0 = 0) is supported")

    @property
    def M_plus(self):
        return self.m_plus + self.m_minus

    @property
    def M_minus(self):
        return self.m_plus - self.m_minus


@dataclass(frozen=True)
class NormalizedParams:
    """Reduced parameter triple (M, delta0_hat, F0_hat) plus v0.

    v0 is retained so that |J0| = delta0_hat / (4 v0) stays recoverable for
    the sqrt(2|J0|) period prefactors; it defaults to 1 when parameters are
    given directly in normalized form.
    """

    M: float
    delta0_hat: float
    F0_hat: float
    v0: float = 1.0

    def __post_init__(self):
        if not self.delta0_hat > 0.0:
            raise ValueError("need delta0_hat > 0")
        if self.M < 0.0:
            raise ValueError("need M >= 0")
        if not self.v0 > 0.0:
            raise ValueError("need v0 > 0")

    @property
    def abs_J0(self):
        return self.delta0_hat / (4.0 * self.v0)

    @property
    def prefactor(self):
        """sqrt(2 |J0|), the time-unit factor in every period formula."""
        return math.sqrt(2.0 * self.abs_J0)


@dataclass(frozen=True)
class RegionLabel:
    """Classification of a parameter point.

    period_region and distance_to_singular refer to the larger mass sum
    M_plus (whose boundary curve caps the quasi-periodic band); use
    classify_mass for the same question about an arbitrary mass.
    """

    period_region: Region
    w_region: WRegion | None
    distance_to_singular: float


@dataclass(frozen=True)
class TurningPoints:
    """Roots of the separated radial/angular quadratics and the resulting
    libration intervals.  beta_components lists every connected positive
    sub-interval of (-1, 1); the choice among them is left to the caller."""

    delta_plus: float
    delta_minus: float
    alpha_minus: float
    alpha_plus: float
    beta_minus: float | None
    beta_plus: float | None
    alpha_range: tuple[float, float]
    beta_components: tuple[tuple[float, float], ...] = field(default=())


def normalize(p, which_mass=MassChoice.PLUS, custom_mass=None):
    """Map physical parameters to the normalized triple.

    which_mass selects which mass sum becomes the scan mass M; J0 must be
    negative (no quasi-periodic motion otherwise).
    """
    if p.J0 >= 0.0:
        raise NonNegativeEnergy(f"J0 = {p.J0} >= 0 admits no quasi-periodic motion")
    if which_mass == MassChoice.PLUS:
        M = p.M_plus
    elif which_mass == MassChoice.MINUS:
        M = p.M_minus
    else:
        if custom_mass is None:
            raise ValueError("MassChoice.CUSTOM requires custom_mass")
        M = float(custom_mass)
    return NormalizedParams(
        M=M,
        delta0_hat=-4.0 * p.v0 * p.J0,
        F0_hat=-2.0 * p.J0 * p.F0,
        v0=p.v0,
    )


def f_sing(M, delta0_hat):
    """Singular-line value: M*delta0_hat on the low branch (delta0_hat <= 2M),
    M^2 + delta0_hat^2/4 above; continuous where the branches meet."""
    if not delta0_hat > 0.0:
        raise ValueError("need delta0_hat > 0")
    if M < 0.0:
        raise ValueError("need M >= 0")
    if delta0_hat <= 2.0 * M:
        return M * delta0_hat
    return M * M + 0.25 * delta0_hat * delta0_hat


def f_sing_branch(M, delta0_hat):
    """Like f_sing but also reports which branch applied ('linear' for
    M*delta0_hat, 'parabolic' for M^2 + delta0_hat^2/4); at the meeting point
    delta0_hat = 2M both agree and 'linear' is reported."""
    value = f_sing(M, delta0_hat)
    return value, ("linear" if delta0_hat <= 2.0 * M else "parabolic")


def f_boundaries(M, delta0_hat):
    """Lower/upper existence boundaries (F_minus, F_plus) of the band of
    quasi-periodic motion for mass M; the two formulas swap roles with the
    singular line across delta0_hat = 2M."""
    if not delta0_hat > 0.0:
        raise ValueError("need delta0_hat > 0")
    f_minus = -M * delta0_hat
    if delta0_hat <= 2.0 * M:
        f_plus = M * M + 0.25 * delta0_hat * delta0_hat
    else:
        f_plus = M * delta0_hat
    return f_minus, f_plus


def singular_distance(M, delta0_hat, F0_hat):
    """Signed distance F0_hat - f_sing_M(delta0_hat)."""
    return F0_hat - f_sing(M, delta0_hat)


def _on_singular(M, delta0_hat, F0_hat):
    fs = f_sing(M, delta0_hat)
    return abs(F0_hat - fs) < ONSING_RTOL * max(1.0, abs(fs))


def classify_mass(M, delta0_hat, F0_hat):
    """P-down / P-up / on-singular classification for a single mass."""
    if not delta0_hat > 0.0:
        return Region.OUTSIDE
    if _on_singular(M, delta0_hat, F0_hat):
        return Region.ON_SINGULAR
    return Region.PDOWN if F0_hat < f_sing(M, delta0_hat) else Region.PUP


def classify(mp, mm, delta0_hat, F0_hat):
    """Classify a parameter point for the mass pair (M_plus, M_minus) = (mp, mm).

    w_region is populated (DS/DL/DP) only inside the quasi-periodic band
    F_minus(mm) < F0_hat < F_plus(mp) and away from both singular lines;
    points outside the band get Region.OUTSIDE.
    """
    if not mp >= mm >= 0.0:
        raise ValueError("need mp >= mm >= 0")
    if not delta0_hat > 0.0:
        return RegionLabel(Region.OUTSIDE, WRegion.OUTSIDE, math.nan)
    dist = singular_distance(mp, delta0_hat, F0_hat)

    f_lo, _ = f_boundaries(mm, delta0_hat)
    _, f_hi = f_boundaries(mp, delta0_hat)
    in_band = f_lo < F0_hat < f_hi
    on_plus = _on_singular(mp, delta0_hat, F0_hat)
    on_minus = _on_singular(mm, delta0_hat, F0_hat)

    if not in_band:
        return RegionLabel(Region.OUTSIDE, WRegion.OUTSIDE, dist)
    if on_plus or on_minus:
        return RegionLabel(Region.ON_SINGULAR, WRegion.ON_BOUNDARY, dist)

    period_region = Region.PDOWN if F0_hat < f_sing(mp, delta0_hat) else Region.PUP
    if F0_hat < f_sing(mm, delta0_hat):
        w_region = WRegion.DS
    elif F0_hat < f_sing(mp, delta0_hat):
        w_region = WRegion.DL
    else:
        w_region = WRegion.DP
    return RegionLabel(period_region, w_region, dist)


def quadratic_roots(M, F0_hat, delta0_hat):
    """Roots (x_minus, x_plus) of M^2 x^2 - 2 F0_hat x + delta0_hat^2.

    Computed via the product relation to avoid cancellation; a discriminant
    below DOUBLE_ROOT_RTOL * F0_hat^2 in magnitude is snapped to a double
    root.  Raises ComplexRoots when the roots leave the real axis.
    """
    if not M > 0.0:
        raise ValueError("need M > 0")
    m2 = M * M
    disc = F0_hat * F0_hat - m2 * delta0_hat * delta0_hat
    if abs(disc) < DOUBLE_ROOT_RTOL * F0_hat * F0_hat:
        x = F0_hat / m2
        return x, x
    if disc < 0.0:
        raise ComplexRoots(
            f"F0_hat^2 = {F0_hat**2:.6g} < (M delta0_hat)^2 = {m2 * delta0_hat**2:.6g}")
    s = math.sqrt(disc)
    if F0_hat >= 0.0:
        x_plus = (F0_hat + s) / m2
        x_minus = (delta0_hat * delta0_hat) / (m2 * x_plus)
    else:
        x_minus = (F0_hat - s) / m2
        x_plus = (delta0_hat * delta0_hat) / (m2 * x_minus)
    return x_minus, x_plus


def turning_points(mp, mm, J0, v0, F0):
    """Roots and libration intervals of both separated motions.

    alpha obeys dh^2 a^2 - 4 Mp dh a + 4 Fh - dh^2 < 0 on (1, inf); beta obeys
    the same quadratic with Mm and the opposite sign on (-1, 1).  Raises
    EmptyHillSet when either admissible set is empty.
    """
    if J0 >= 0.0:
        raise NonNegativeEnergy(f"J0 = {J0} >= 0 admits no quasi-periodic motion")
    dh = -4.0 * v0 * J0
    fh = -2.0 * J0 * F0
    d_plus = mp * mp + 0.25 * dh * dh - fh
    d_minus = mm * mm + 0.25 * dh * dh - fh

    if d_plus <= 0.0:
        raise EmptyHillSet("alpha libration interval is empty (Delta_plus <= 0)")
    sq = math.sqrt(d_plus)
    a_minus = (2.0 / dh) * (mp - sq)
    a_plus = (2.0 / dh) * (mp + sq)
    if a_plus <= 1.0:
        raise EmptyHillSet("alpha libration interval is empty (alpha_plus <= 1)")
    alpha_range = (max(1.0, a_minus), a_plus)

    if d_minus < 0.0:
        b_minus = b_plus = None
        beta_components = ((-1.0, 1.0),)
    else:
        sq = math.sqrt(d_minus)
        b_minus = (2.0 / dh) * (mm - sq)
        b_plus = (2.0 / dh) * (mm + sq)
        comps = []
        if b_minus > -1.0:
            comps.append((-1.0, min(b_minus, 1.0)))
        if b_plus < 1.0:
            comps.append((max(b_plus, -1.0), 1.0))
        if b_minus <= -1.0 and b_plus >= 1.0:
            raise EmptyHillSet("beta admissible set is empty")
        if not comps:
            raise EmptyHillSet("beta admissible set is empty")
        beta_components = tuple(comps)

    return TurningPoints(
        delta_plus=d_plus,
        delta_minus=d_minus,
        alpha_minus=a_minus,
        alpha_plus=a_plus,
        beta_minus=b_minus,
        beta_plus=b_plus,
        alpha_range=alpha_range,
        beta_components=beta_components,
    )
