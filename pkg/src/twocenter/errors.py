"""Exception hierarchy shared by all twocenter modules."""


class TwoCenterError(Exception):
    """Base class for all package errors."""


# parameter / domain errors
class NonNegativeEnergy(TwoCenterError):
    """Energy level J0 >= 0: no bounded quasi-periodic motion exists."""


class ComplexRoots(TwoCenterError):
    """The radial quadratic has no real roots for these parameters."""


class EmptyHillSet(TwoCenterError):
    """No admissible libration interval for at least one separated coordinate."""


class OutOfDomain(TwoCenterError):
    """Parameters outside the domain of the requested representation."""


# quadrature errors
class NonFiniteIntegrand(TwoCenterError):
    """Integrand returned a non-finite value at an interior quadrature node."""


class BranchAmbiguity(TwoCenterError):
    """Complex radicand argument jumps too fast between adjacent nodes; the
    square-root sheet cannot be tracked reliably."""


# period-engine errors
class RepresentationMismatch(TwoCenterError):
    """Two parametrizations of the same period disagree beyond tolerance."""


class ConstraintViolated(TwoCenterError):
    """(e, omega) pair does not satisfy the eccentricity-perihelion constraint."""


class ComplexEccentricity(TwoCenterError):
    """Effective eccentricity would be complex for these parameters."""


# elliptic-identity errors
class ConditionViolated(TwoCenterError):
    """Lemma parameters violate the modulus condition |b/a| < min|t +- i sqrt(1-t^2)|."""


class NoCaseApplies(TwoCenterError):
    """Degenerate alpha/beta pairing: no reduction case is applicable."""


class ComplexRadicand(TwoCenterError):
    """Auxiliary square root has negative radicand for these parameters."""


# monotonicity errors
class MonotonicityViolated(TwoCenterError):
    """f and g are not monotone in the same direction on the weight support."""


# dynamics-oracle errors
class CollisionSingularity(TwoCenterError):
    """Phase-space point coincides with one of the attracting centers."""


class CollisionApproach(TwoCenterError):
    """Trajectory came closer to a center than the safety radius."""


class StepFailure(TwoCenterError):
    """The ODE integrator failed to complete the requested time span."""


class InsufficientOscillations(TwoCenterError):
    """Trajectory does not span enough oscillations to measure periods."""


class HyperbolicState(TwoCenterError):
    """State has non-negative energy; no elliptic element set exists."""
