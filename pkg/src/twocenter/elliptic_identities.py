"""Executable elliptic-integral identities.

The objects here are 2*pi-periodic integrals of 1/sqrt(quadratic in cos):
the equivalence lemma relating two such integrals, their alpha/beta pairing,
the eps/chi/gamma/psi auxiliary functions, the symmetrized two-term
continuation of t_down above the singular line, and the real-part relation
that ties it back to t_circ.

Branch policy: every radicand is normalized by its leading complex constant
before the square root is taken, so the principal branch acts on a factor
that the validity conditions keep away from the negative real axis.  The
values are even in that constant, so normalizing by sqrt(a^2) rather than a
is canonical.  Radicands that are genuinely real with sign changes are
reduced by u = cos(theta) and integrated segment-by-segment between their
roots, the negative-sign segments contributing -i times a real integral
(the principal square root of a negative real).
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ComplexRadicand, ConditionViolated, NoCaseApplies, OutOfDomain
from .param_domain import NormalizedParams, quadratic_roots
from .period_engine import t_circ
from .quadrature import DEFAULT_SPEC, integrate_complex_periodic, tanh_sinh_with_history

__all__ = [
    "LemmaParams",
    "AlphaBetaPair",
    "AuxFunctions",
    "CorCaseResult",
    "lemma_lhs",
    "lemma_rhs",
    "alpha_beta",
    "i2_integral",
    "i3_integral",
    "cor_case",
    "aux_functions",
    "good_formula_t_down",
    "t_down_complex_line",
    "real_part_corollary_check",
    "sample_lemma_params",
    "verify_lemma_batch",
]

# coefficients with |imag| below this (relative) count as real
_REAL_RTOL = 1e-13


def principal_sqrt(z):
    """Principal complex square root with the imaginary part of negative
    reals forced onto the +0 side (numpy honours the sign of -0.0j)."""
    z = complex(z)
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    return cmath.sqrt(z)


@dataclass(frozen=True)
class LemmaParams:
    """Parameters (a, b, t) of the two equivalent integrals.

    Validity: a != 0 and |b/a| < min |t +- i sqrt(1-t^2)| (principal root);
    under it both radicands stay off the negative real axis after
    normalization by a^2.
    """

    a: complex
    b: complex
    t: complex

    def min_modulus(self):
        r = principal_sqrt(1.0 - self.t * self.t)
        return min(abs(self.t + 1j * r), abs(self.t - 1j * r))

    def satisfies_conditions(self):
        if self.a == 0:
            return False
        return abs(self.b / self.a) < self.min_modulus()

    def require_valid(self):
        if not self.satisfies_conditions():
            if self.a == 0:
                raise ConditionViolated("a must be nonzero")
            raise ConditionViolated(
                f"|b/a| = {abs(self.b / self.a):.6g} not below "
                f"min|t +- i sqrt(1-t^2)| = {self.min_modulus():.6g}")


@dataclass(frozen=True)
class AlphaBetaPair:
    alpha: complex
    beta: complex


@dataclass(frozen=True)
class AuxFunctions:
    eps: float
    chi: float
    gamma: float
    psi: float


@dataclass(frozen=True)
class CorCaseResult:
    value: complex
    case: str


# ---------------------------------------------------------------------------
# core integral: int_0^{2pi} dtheta / sqrt(n2 cos^2 + n1 cos + n0)

def _segment_integral(s0, s1, zeros, const, quad, spec):
    """tanh-sinh integral of 1/sqrt(const * prod|u - z| * quad(u)) on [s0, s1].

    Every z in zeros lies at an endpoint or outside the open interval; the
    optional quadratic factor must be positive on it.  Endpoint-coincident
    zeros are expressed through the endpoint distances, which is what keeps
    inverse-square-root endpoints accurate to machine precision.
    """
    offs = []
    for z in zeros:
        if z <= s0:
            offs.append((s0 - z, 0))        # factor (u - z) = off + da
        elif z >= s1:
            offs.append((z - s1, 1))        # factor (z - u) = off + db
        else:
            raise ValueError("zero strictly inside a segment")

    def f(u, da, db):
        prod = np.full_like(u, const)
        for off, side in offs:
            prod = prod * (off + (da if side == 0 else db))
        if quad is not None:
            q2, q1, q0 = quad
            prod = prod * ((q2 * u + q1) * u + q0)
        return 1.0 / np.sqrt(prod)

    res, _ = tanh_sinh_with_history(f, s0, s1, spec)
    return res


def _real_quadratic_roots(n2, n1, n0):
    """Real roots of n2 u^2 + n1 u + n0, stable near degeneracy."""
    if n2 == 0.0:
        if n1 == 0.0:
            return []
        return [-n0 / n1]
    disc = n1 * n1 - 4.0 * n2 * n0
    if disc < 0.0:
        return []
    s = math.sqrt(disc)
    q = -0.5 * (n1 + math.copysign(s, n1)) if n1 != 0.0 else 0.5 * s
    if q == 0.0:
        return [0.0, 0.0]
    r1, r2 = q / n2, n0 / q
    return sorted((r1, r2))


def _cos_reduced(n2, n1, n0, spec):
    """int_0^{2pi} dtheta / sqrt(R(cos theta)) for a real quadratic R.

    Reduces to 2 * int_{-1}^{1} du / (sqrt(1-u^2) sqrt(R(u))) and splits at
    the real roots of R inside (-1, 1); segments with R < 0 contribute
    -i times the matching real integral.
    """
    if n2 == 0.0 and n1 == 0.0:
        val = 2.0 * math.pi / principal_sqrt(n0)
        return val, 0.0, 0

    roots = _real_quadratic_roots(n2, n1, n0)
    inner = [r for r in roots if -1.0 < r < 1.0]
    cuts = sorted({-1.0, 1.0, *inner})
    total = 0.0 + 0.0j
    err = 0.0
    evals = 0
    for s0, s1 in zip(cuts[:-1], cuts[1:]):
        if roots:
            const = abs(n2) if n2 != 0.0 else abs(n1)
            zeros = [-1.0, 1.0, *roots]
            quad = None
            mid_sign = math.copysign(1.0, n2 if n2 != 0.0 else n1)
            mid = 0.5 * (s0 + s1)
            for r in roots:
                mid_sign *= math.copysign(1.0, mid - r)
        else:
            # definite quadratic: same sign as the leading coefficient
            mid_sign = math.copysign(1.0, n2)
            const = 1.0
            zeros = [-1.0, 1.0]
            quad = (n2, n1, n0) if mid_sign > 0 else (-n2, -n1, -n0)
        res = _segment_integral(s0, s1, zeros, const, quad, spec)
        seg = 2.0 * res.value
        total += seg if mid_sign > 0 else -1j * seg
        err += 2.0 * res.err_estimate
        evals += res.evaluations
    return total, err, evals


def _coeffs_are_real(*cs):
    scale = max(abs(c) for c in cs)
    if scale == 0.0:
        return True
    return all(abs(complex(c).imag) <= _REAL_RTOL * scale for c in cs)


def _periodic_inv_sqrt(n2, n1, n0, spec):
    """int_0^{2pi} dtheta / sqrt(n2 cos^2 + n1 cos + n0), complex coeffs."""
    if _coeffs_are_real(n2, n1, n0):
        val, err, _ = _cos_reduced(complex(n2).real, complex(n1).real,
                                   complex(n0).real, spec)
        return val

    def radicand(theta):
        c = np.cos(theta)
        return (n2 * c + n1) * c + n0

    def f(theta):
        r = radicand(theta)
        r = np.where(np.imag(r) == 0.0, r.real + 0.0j, r)
        return 1.0 / np.sqrt(r)

    res = integrate_complex_periodic(f, spec, radicand=radicand)
    return res.value


# ---------------------------------------------------------------------------
# the equivalence lemma

def lemma_lhs(p, spec=None):
    """Oscillatory-form integral of the lemma, canonical normalization."""
    spec = spec or DEFAULT_SPEC
    p.require_valid()
    sa = principal_sqrt(p.a * p.a)
    ratio = p.b / sa
    root = principal_sqrt(1.0 - p.t * p.t)
    return _periodic_inv_sqrt(-ratio * ratio, -2j * ratio * root, 1.0, spec) / sa


def lemma_rhs(p, spec=None):
    """Shifted-cosine-form integral of the lemma, canonical normalization."""
    spec = spec or DEFAULT_SPEC
    p.require_valid()
    sa = principal_sqrt(p.a * p.a)
    ratio = p.b / sa
    return _periodic_inv_sqrt(0.0, -2.0 * ratio * p.t,
                              1.0 + ratio * ratio, spec) / sa


def alpha_beta(p):
    """Pairing (alpha, beta) with alpha^2 + beta^2 = a^2 + b^2 and
    alpha beta = +- a b t.

    alpha takes the principal double root; beta comes from the product
    relation (exact where alpha is away from zero), which avoids the
    catastrophic cancellation of sqrt(s - inner) when the product term is
    small.  Any sign choice of beta satisfies the defining relations.
    """
    s = (p.a * p.a + p.b * p.b) / 2.0
    prod = p.a * p.b * p.t
    inner = principal_sqrt(s * s - prod * prod)
    if (s.conjugate() * inner).real < 0.0:
        inner = -inner          # align with s so alpha is the large root
    alpha = principal_sqrt(s + inner)
    if abs(alpha) ** 2 > 1e-8 * (abs(s) + abs(inner)):
        beta = prod / alpha
    else:
        beta = principal_sqrt(s - inner)
    return AlphaBetaPair(alpha, beta)


def i2_integral(alpha, beta, spec=None):
    """int_0^{2pi} dtheta / sqrt(alpha^2 - beta^2 cos^2), normalized by
    sqrt(alpha^2)."""
    spec = spec or DEFAULT_SPEC
    sa = principal_sqrt(alpha * alpha)
    rho2 = (beta / alpha) ** 2
    return _periodic_inv_sqrt(-rho2, 0.0, 1.0, spec) / sa


def i3_integral(alpha, beta, spec=None):
    """int_0^{2pi} dtheta / sqrt(beta^2 - alpha^2 cos^2), normalized by
    sqrt(beta^2)."""
    return i2_integral(beta, alpha, spec)


def _branch_sign(p, normalizer):
    """Sign aligning a normalizer-based case value with the a-based lemma
    value.

    Both integrands are continuous and nonvanishing, so their pointwise
    ratio is a constant +-1; it is read off at cos(theta) = 0 where the
    shared radicand equals a^2 + b^2 (nonzero since |b| < |a|).
    """
    w = p.a * p.a + p.b * p.b
    sa = principal_sqrt(p.a * p.a)
    sn = principal_sqrt(normalizer * normalizer)
    f = 1.0 / (sa * principal_sqrt(w / (p.a * p.a)))
    g = 1.0 / (sn * principal_sqrt(w / (normalizer * normalizer)))
    sigma = f / g
    return 1.0 if sigma.real > 0.0 else -1.0


def cor_case(p, spec=None):
    """Evaluate the lemma integral through the applicable alpha/beta case.

    Dispatch order: real ratios use the real-part forms; otherwise
    |beta/alpha| < 1 selects the alpha-normalized integral and > 1 the
    beta-normalized one.  |beta/alpha| = 1 (or alpha = beta = 0) admits no
    case.  Each case value carries the branch-alignment sign relating its
    normalizer to the lemma's.
    """
    spec = spec or DEFAULT_SPEC
    p.require_valid()
    ab = alpha_beta(p)
    alpha, beta = ab.alpha, ab.beta
    if alpha == 0 and beta == 0:
        raise NoCaseApplies("alpha = beta = 0")
    mod = abs(beta / alpha) if alpha != 0 else math.inf
    if abs(mod - 1.0) <= 1e-9:
        raise NoCaseApplies(f"|beta/alpha| = {mod} is excluded")
    if alpha != 0 and mod < 1.0:
        sigma = _branch_sign(p, alpha)
        ratio = beta / alpha
        if beta != 0 and abs(complex(ratio).imag) <= 1e-12 * abs(ratio):
            # real beta/alpha: real-part form (coincides with the plain
            # alpha-normalized value since the normalized radicand stays
            # positive for |beta/alpha| < 1)
            sa = principal_sqrt(alpha * alpha)
            val = sigma * (sa * i2_integral(alpha, beta, spec)).real / sa
            return CorCaseResult(val, "iii")
        return CorCaseResult(sigma * i2_integral(alpha, beta, spec), "i")
    sigma = _branch_sign(p, beta)
    if beta != 0 and mod > 1.0:
        ratio = alpha / beta
        if abs(complex(ratio).imag) <= 1e-12 * abs(ratio):
            # real alpha/beta: real part of the beta-normalized form
            sb = principal_sqrt(beta * beta)
            val = sigma * (sb * i3_integral(alpha, beta, spec)).real / sb
            return CorCaseResult(val, "iv")
        return CorCaseResult(sigma * i3_integral(alpha, beta, spec), "ii")
    # alpha = 0 with beta != 0 lands here: pure I3
    return CorCaseResult(sigma * i3_integral(alpha, beta, spec), "ii")


# ---------------------------------------------------------------------------
# auxiliary functions and the continuation of t_down

def aux_functions(M, delta0_hat, F0_hat):
    """eps/chi/gamma/psi at (delta0_hat, F0_hat); delta0_hat may be signed."""
    rad = M * M + 0.25 * delta0_hat**2 - F0_hat
    if rad < 0.0:
        raise ComplexRadicand(
            f"F0_hat = {F0_hat:.6g} above M^2 + delta0_hat^2/4 = "
            f"{M * M + 0.25 * delta0_hat**2:.6g}")
    root = math.sqrt(rad)
    half_gamma = 0.5 * (F0_hat - 0.5 * delta0_hat**2)
    return AuxFunctions(
        eps=-half_gamma + 1.5 * delta0_hat * root,
        chi=half_gamma + 0.5 * delta0_hat * root,
        gamma=F0_hat - 0.5 * delta0_hat**2,
        psi=delta0_hat * root,
    )


def _in_triangle(M, delta0_hat, F0_hat, closed_top=False):
    if not 0.0 < abs(delta0_hat) < 2.0 * M:
        return False
    top = M * M + 0.25 * delta0_hat**2
    hi_ok = F0_hat <= top if closed_top else F0_hat < top
    return M * abs(delta0_hat) < F0_hat and hi_ok


def good_formula_t_down(M, delta0_hat, F0_hat, v0=1.0, spec=None):
    """Two-term symmetrized continuation of t_down on the triangle region.

    Complex-valued; above the singular line the (+delta) term carries the
    real part while the (-delta) term is purely imaginary, which is what the
    real-part relation to t_circ rests on.
    """
    spec = spec or DEFAULT_SPEC
    if not _in_triangle(M, delta0_hat, F0_hat, closed_top=True):
        raise OutOfDomain("good formula requires the triangle region")
    n = NormalizedParams(M=M, delta0_hat=abs(delta0_hat), F0_hat=F0_hat, v0=v0)
    total = 0.0 + 0.0j
    for dh in (delta0_hat, -delta0_hat):
        aux = aux_functions(M, dh, F0_hat)
        total += _periodic_inv_sqrt(0.0, -aux.chi, aux.eps, spec)
    return 0.5 * n.prefactor * total


def t_down_complex_line(M, delta0_hat, F0_hat, v0=1.0, spec=None):
    """Principal-branch quadrature of the full radial integral, allowed to
    take complex values above the singular line.

    Below the strip boundary (real roots absent) this reduces to the plain
    t_down value; above it the stretch between the roots contributes a
    purely imaginary part.
    """
    spec = spec or DEFAULT_SPEC
    n = NormalizedParams(M=M, delta0_hat=delta0_hat, F0_hat=F0_hat, v0=v0)
    m2 = M * M
    coeffs = (m2, -2.0 * F0_hat, delta0_hat**2)
    if abs(F0_hat) < M * delta0_hat:
        roots = []
    else:
        roots = list(quadratic_roots(M, F0_hat, delta0_hat))
    inner = [r for r in roots if 0.0 < r < 2.0]
    cuts = sorted({0.0, 2.0, *inner})
    total = 0.0 + 0.0j
    for s0, s1 in zip(cuts[:-1], cuts[1:]):
        if roots:
            zeros = [0.0, 2.0, *roots]
            # sign of x(2-x) Q(x) at the midpoint, from the factored form
            mid = 0.5 * (s0 + s1)
            sign = 1.0
            for r in roots:
                sign *= math.copysign(1.0, mid - r)
            sign *= math.copysign(1.0, m2)
            res = _segment_integral(s0, s1, zeros, m2, None, spec)
        else:
            sign = 1.0
            res = _segment_integral(s0, s1, [0.0, 2.0], 1.0, coeffs, spec)
        total += res.value if sign > 0 else -1j * res.value
    return 2.0 * n.prefactor * total


def real_part_corollary_check(M, delta0_hat, F0_hat, v0=1.0, spec=None):
    """Return (t_circ value, 2 Re of the symmetrized continuation) on the
    closed upper triangle; the two agree there."""
    spec = spec or DEFAULT_SPEC
    if not _in_triangle(M, delta0_hat, F0_hat, closed_top=True):
        raise OutOfDomain("corollary check requires the closed upper triangle")
    n = NormalizedParams(M=M, delta0_hat=delta0_hat, F0_hat=F0_hat, v0=v0)
    tc = t_circ(n, spec)
    good = good_formula_t_down(M, delta0_hat, F0_hat, v0, spec)
    return tc.value, 2.0 * good.real


# ---------------------------------------------------------------------------
# batched verification

def sample_lemma_params(n_samples, seed):
    """Random parameter draws satisfying the validity condition.

    a on the unit circle with uniform phase, t in the complex unit disk,
    |b| up to 0.9 of the allowed modulus with uniform phase.
    """
    rng = np.random.default_rng(seed)
    phi = rng.uniform(0.0, 2.0 * np.pi, n_samples)
    a = np.exp(1j * phi)
    t = np.sqrt(rng.uniform(0.0, 1.0, n_samples)) \
        * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n_samples))
    root = np.sqrt((1.0 - t * t).astype(complex))
    lim = np.minimum(np.abs(t + 1j * root), np.abs(t - 1j * root))
    b = 0.9 * lim * rng.uniform(0.0, 1.0, n_samples) \
        * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n_samples))
    return a, b, t


def _batch_periodic_inv_sqrt(n2, n1, n0, rel_tol=1e-11, start_n=32, max_n=1 << 15):
    """Vectorized trapezoid values of int dtheta / sqrt(n2 c^2 + n1 c + n0)
    for arrays of coefficients whose radicands avoid the negative real axis."""
    n2 = np.asarray(n2, dtype=complex)
    n1 = np.asarray(n1, dtype=complex)
    n0 = np.asarray(n0, dtype=complex)
    m = n2.shape[0]
    vals = np.zeros(m, dtype=complex)
    prev = np.zeros(m, dtype=complex)
    active = np.ones(m, dtype=bool)
    n = start_n
    while n <= max_n and active.any():
        theta = np.arange(n) * (2.0 * np.pi / n)
        c = np.cos(theta)
        idx = np.flatnonzero(active)
        rad = (n2[idx, None] * c[None, :] + n1[idx, None]) * c[None, :] \
            + n0[idx, None]
        rad = np.where(rad.imag == 0.0, rad.real + 0.0j, rad)
        cur = (2.0 * np.pi / n) * np.sum(1.0 / np.sqrt(rad), axis=1)
        if n > start_n:
            conv = np.abs(cur - prev[idx]) <= rel_tol * (1.0 + np.abs(cur))
        else:
            conv = np.zeros(idx.size, dtype=bool)
        vals[idx] = cur
        prev[idx] = cur
        active[idx[conv]] = False
        n *= 2
    return vals


def verify_lemma_batch(n_samples=10000, seed=7, rel_tol=1e-11):
    """Residuals of the lemma over seeded random draws.

    Returns a dict with the maximum normalized residual of lhs vs rhs, the
    maximum residual of the case-reduction value vs lhs, and the case tally.
    """
    a, b, t = sample_lemma_params(n_samples, seed)
    sa = np.sqrt((a * a).astype(complex))
    ratio = b / sa
    root = np.sqrt((1.0 - t * t).astype(complex))

    lhs = _batch_periodic_inv_sqrt(-ratio * ratio, -2j * ratio * root,
                                   np.ones_like(ratio), rel_tol) / sa
    rhs = _batch_periodic_inv_sqrt(np.zeros_like(ratio), -2.0 * ratio * t,
                                   1.0 + ratio * ratio, rel_tol) / sa
    resid = np.abs(lhs - rhs) / (1.0 + np.abs(lhs))

    # case reduction: alpha/beta pairing, normalized integrals (inner root
    # aligned with s and beta via the product relation, as in alpha_beta)
    s = (a * a + b * b) / 2.0
    prod = a * b * t
    inner = np.sqrt((s * s - prod * prod).astype(complex))
    inner = np.where((np.conj(s) * inner).real < 0.0, -inner, inner)
    alpha = np.sqrt((s + inner).astype(complex))
    safe = np.abs(alpha) ** 2 > 1e-8 * (np.abs(s) + np.abs(inner))
    beta = np.where(safe, prod / np.where(alpha == 0, 1.0, alpha),
                    np.sqrt((s - inner).astype(complex)))
    with np.errstate(divide="ignore", invalid="ignore"):
        mod = np.abs(np.where(alpha != 0, beta / np.where(alpha == 0, 1, alpha),
                              np.inf))
    case_i = (alpha != 0) & (mod < 1.0 - 1e-9)
    case_ii = ~case_i & (beta != 0) & (mod > 1.0 + 1e-9)
    usable = case_i | case_ii
    w = a * a + b * b

    def branch_sign(norm):
        sn = np.sqrt((norm * norm).astype(complex))
        f = 1.0 / (sa * np.sqrt((w / (a * a)).astype(complex)))
        g = 1.0 / (sn * np.sqrt((w / (norm * norm)).astype(complex)))
        return np.where((f / g).real > 0.0, 1.0, -1.0)

    cor = np.full(a.shape, np.nan + 0j, dtype=complex)
    if case_i.any():
        al, be = alpha[case_i], beta[case_i]
        sal = np.sqrt((al * al).astype(complex))
        rho2 = (be / al) ** 2
        cor[case_i] = branch_sign(alpha)[case_i] * _batch_periodic_inv_sqrt(
            -rho2, np.zeros_like(rho2), np.ones_like(rho2), rel_tol) / sal
    if case_ii.any():
        al, be = alpha[case_ii], beta[case_ii]
        sbe = np.sqrt((be * be).astype(complex))
        rho2 = (al / be) ** 2
        cor[case_ii] = branch_sign(beta)[case_ii] * _batch_periodic_inv_sqrt(
            -rho2, np.zeros_like(rho2), np.ones_like(rho2), rel_tol) / sbe
    cor_resid = np.abs(cor[usable] - lhs[usable]) / (1.0 + np.abs(lhs[usable]))

    return {
        "n_samples": int(n_samples),
        "max_residual": float(resid.max()),
        "max_case_residual": float(cor_resid.max()) if usable.any() else 0.0,
        "n_case_i": int(case_i.sum()),
        "n_case_ii": int(case_ii.sum()),
        "n_degenerate": int((~usable).sum()),
    }
