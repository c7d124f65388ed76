"""Periods and rotation numbers of the planar two-fixed-center problem.

The package computes the oscillation periods of the separated co-focal
motions through several equivalent quadrature representations, classifies the
parameter plane (normalized energy scale delta0_hat against the first-integral
level F0_hat), verifies the elliptic-integral identities connecting the
representations, checks the fiber-wise monotonicity of the periods and of
their ratio, and cross-validates everything against direct integration of the
Hamiltonian flow.
"""

from .errors import (
    BranchAmbiguity,
    CollisionApproach,
    CollisionSingularity,
    ComplexEccentricity,
    ComplexRadicand,
    ComplexRoots,
    ConditionViolated,
    ConstraintViolated,
    EmptyHillSet,
    HyperbolicState,
    InsufficientOscillations,
    MonotonicityViolated,
    NoCaseApplies,
    NonFiniteIntegrand,
    NonNegativeEnergy,
    OutOfDomain,
    RepresentationMismatch,
    StepFailure,
    TwoCenterError,
)
from .param_domain import (
    MassChoice,
    NormalizedParams,
    Region,
    RegionLabel,
    SystemParams,
    TurningPoints,
    WRegion,
    classify,
    classify_mass,
    f_boundaries,
    f_sing,
    f_sing_branch,
    normalize,
    quadratic_roots,
    turning_points,
)
from .quadrature import (
    IntegralResult,
    QuadratureSpec,
    integrate_adaptive,
    integrate_complex_periodic,
    integrate_double,
    integrate_endpoint_singular,
    integrate_periodic,
)
from .period_engine import (
    PeriodResult,
    PeriodStatus,
    Representation,
    RotationNumberResult,
    e_omega_solutions,
    jacobi_t_minus,
    jacobi_t_plus,
    rotation_number,
    t_circ,
    t_down,
    t_down_normalized,
    t_general_e_omega,
    t_of,
    t_star,
    t_up,
    t_up_normalized,
)
from .elliptic_identities import (
    AlphaBetaPair,
    AuxFunctions,
    LemmaParams,
    alpha_beta,
    aux_functions,
    cor_case,
    good_formula_t_down,
    lemma_lhs,
    lemma_rhs,
    real_part_corollary_check,
    t_down_complex_line,
    verify_lemma_batch,
)
from .monotonicity import (
    FiberScan,
    SFunctionalSample,
    chebyshev_check,
    divergence_probe,
    kernel_f,
    kernel_g,
    kernel_monotonicity,
    kernel_p,
    s_down,
    s_up,
    scan_fiber,
)
from .dynamics_oracle import (
    EmpiricalPeriod,
    IntegratorControls,
    KeplerElements,
    PhaseState,
    TrajectoryRun,
    TrajectorySample,
    collision_classify,
    elements_from_state,
    euler_integral,
    euler_integral_cofocal,
    hamiltonian,
    initial_state,
    integrate_orbit,
    integrate_until_oscillations,
    measure_tau_periods,
    state_from_elements,
)

__version__ = "0.1.0"
