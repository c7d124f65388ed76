"""Hot summation kernels for the quadrature-heavy integrands.

Every kernel exists twice: ``*_numpy`` (vectorized) and a scalar-loop variant
that numba compiles when the numba path is active (see _backend).  The public
names bind to whichever path was selected at import time; both stay importable
for benchmarking.

All kernels consume tanh-sinh node data (x, da, db, w) where da = x - a and
db = b - x are endpoint distances carried at full relative accuracy, which is
what lets inverse-square-root endpoint factors integrate to ~1e-15.
"""

import numpy as np

from ._backend import NUMBA_ENABLED, maybe_njit

__all__ = [
    "quartic_sum",
    "four_factor_sum",
    "jacobi_alpha_sum",
    "jacobi_beta_sum",
    "q_power_sum",
    "NUMBA_ENABLED",
]


# --- t_down family: sum w / sqrt(da*db*(a2 x^2 + a1 x + a0)) ---------------

def quartic_sum_numpy(x, da, db, w, a2, a1, a0):
    q = (a2 * x + a1) * x + a0
    return float(np.sum(w / np.sqrt(da * db * q)))


def _quartic_sum_loop(x, da, db, w, a2, a1, a0):
    s = 0.0
    for i in range(x.shape[0]):
        q = (a2 * x[i] + a1) * x[i] + a0
        s += w[i] / np.sqrt(da[i] * db[i] * q)
    return s


# --- t_up family: sum w / sqrt(da*db*(c1 + s1*db)*(c2 + s2*db)) ------------
# the two smooth factors are expressed through db so that they stay accurate
# when the turning point crowds the far endpoint

def four_factor_sum_numpy(da, db, w, c1, s1, c2, s2):
    return float(np.sum(w / np.sqrt(da * db * (c1 + s1 * db) * (c2 + s2 * db))))


def _four_factor_sum_loop(da, db, w, c1, s1, c2, s2):
    s = 0.0
    for i in range(da.shape[0]):
        s += w[i] / np.sqrt(da[i] * db[i] * (c1 + s1 * db[i]) * (c2 + s2 * db[i]))
    return s


# --- Jacobi alpha-period: factors (e1+da)(e2+da)(e3+da)*db -----------------
# e1 = lo - 1 (zero when the libration starts at alpha = 1), e2 = lo + 1,
# e3 = lo - alpha_minus; db = alpha_plus - alpha

def jacobi_alpha_sum_numpy(da, db, w, e1, e2, e3):
    return float(np.sum(w / np.sqrt((e1 + da) * (e2 + da) * (e3 + da) * db)))


def _jacobi_alpha_sum_loop(da, db, w, e1, e2, e3):
    s = 0.0
    for i in range(da.shape[0]):
        s += w[i] / np.sqrt((e1 + da[i]) * (e2 + da[i]) * (e3 + da[i]) * db[i])
    return s


# --- Jacobi beta-period over one component: da*db*(c1+s1*da)*(c2+s2*da) ----

def jacobi_beta_sum_numpy(da, db, w, c1, s1, c2, s2):
    return float(np.sum(w / np.sqrt(da * db * (c1 + s1 * da) * (c2 + s2 * da))))


def _jacobi_beta_sum_loop(da, db, w, c1, s1, c2, s2):
    s = 0.0
    for i in range(da.shape[0]):
        s += w[i] / np.sqrt(da[i] * db[i] * (c1 + s1 * da[i]) * (c2 + s2 * da[i]))
    return s


# --- weighted moments of the radial quadratic: sum w x^k / (Q^m sqrt(da*db*Q))
# serves the g^beta_alpha integrals (beta = k - 1/2, alpha = m + 1/2)

def q_power_sum_numpy(x, da, db, w, k, m, a2, a1, a0):
    q = (a2 * x + a1) * x + a0
    return float(np.sum(w * x**k / (q**m * np.sqrt(da * db * q))))


def _q_power_sum_loop(x, da, db, w, k, m, a2, a1, a0):
    s = 0.0
    for i in range(x.shape[0]):
        q = (a2 * x[i] + a1) * x[i] + a0
        s += w[i] * x[i] ** k / (q**m * np.sqrt(da[i] * db[i] * q))
    return s


if NUMBA_ENABLED:
    quartic_sum = maybe_njit(_quartic_sum_loop)
    four_factor_sum = maybe_njit(_four_factor_sum_loop)
    jacobi_alpha_sum = maybe_njit(_jacobi_alpha_sum_loop)
    jacobi_beta_sum = maybe_njit(_jacobi_beta_sum_loop)
    q_power_sum = maybe_njit(_q_power_sum_loop)
else:
    quartic_sum = quartic_sum_numpy
    four_factor_sum = four_factor_sum_numpy
    jacobi_alpha_sum = jacobi_alpha_sum_numpy
    jacobi_beta_sum = jacobi_beta_sum_numpy
    q_power_sum = q_power_sum_numpy
