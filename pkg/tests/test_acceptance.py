"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they complete.  Criterion 5's fixed boundary thresholds are checked
exactly as specified; see the assertion message for the measured values if it
reports a failure.
"""

import math

import numpy as np
import pytest

from twocenter.elliptic_identities import (
    real_part_corollary_check,
    verify_lemma_batch,
)
from twocenter.dynamics_oracle import (
    integrate_until_oscillations,
    measure_tau_periods,
)
from twocenter.monotonicity import (
    chebyshev_check,
    divergence_probe,
    kernel_f,
    kernel_g,
    kernel_monotonicity,
    kernel_p,
    s_down,
    s_up,
    s_up_finite_difference,
)
from twocenter.param_domain import (
    MassChoice,
    NormalizedParams,
    SystemParams,
    f_boundaries,
    f_sing,
    normalize,
)
from twocenter.period_engine import (
    e_omega_solutions,
    jacobi_t_minus,
    jacobi_t_plus,
    t_circ,
    t_down,
    t_general_e_omega,
    t_of,
    t_star,
    t_up,
    t_up_normalized,
)


def report(num, name, ok, detail=""):
    line = f"ACCEPTANCE {num:2d} ({name}): {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    return line


def band_points(M, dh, count, margin_frac=0.03, sing_band=1e-3):
    """Interior F0_hat samples of the existence band for mass M, excluding
    a band around the singular line."""
    f_lo, f_hi = f_boundaries(M, dh)
    width = f_hi - f_lo
    fs = f_sing(M, dh)
    pts = np.linspace(f_lo + margin_frac * width, f_hi - margin_frac * width,
                      count)
    return [f for f in pts if abs(f - fs) > sing_band]


class TestAcceptance:
    def test_criterion_01_kepler_degeneracy(self):
        worst_pm = 0.0
        worst_ext = 0.0
        n_pts = 0
        for dh in np.linspace(0.2, 4.0, 20):
            for fh in band_points(1.0, dh, 20):
                p = SystemParams(m_plus=1.0, m_minus=0.0, v0=1.0,
                                 J0=-dh / 4.0, F0=fh / (dh / 2.0))
                tp = jacobi_t_plus(p)
                tms = jacobi_t_minus(p)
                ref = t_of(NormalizedParams(1.0, dh, fh))
                if not (tp.ok and ref.ok):
                    continue
                n_pts += 1
                for tm in tms:
                    worst_pm = max(worst_pm,
                                   abs(tp.value - tm.value) / tp.value)
                worst_ext = max(worst_ext,
                                abs(tp.value - ref.value) / ref.value)
        ok = worst_pm < 1e-8 and worst_ext < 1e-8 and n_pts > 300
        report(1, "Kepler degeneracy", ok,
               f"{n_pts} grid points, max |T+-T-|/T = {worst_pm:.2e}, "
               f"max vs extension = {worst_ext:.2e}")
        assert ok

    def test_criterion_02_two_center_identities(self):
        rng = np.random.default_rng(42)
        pairs = [(1.0, 0.3), (1.0, 0.7), (1.0, 1.0)]
        counts = [17, 17, 16]
        worst = 0.0
        n_done = 0
        for (m_p, m_m), n_target in zip(pairs, counts):
            Mp, Mm = m_p + m_m, m_p - m_m
            tried = 0
            done = 0
            while done < n_target and tried < 200:
                tried += 1
                dh = rng.uniform(0.6, 2.4)
                f_lo, _ = f_boundaries(Mm, dh)
                _, f_hi = f_boundaries(Mp, dh)
                fh = rng.uniform(f_lo + 0.08 * (f_hi - f_lo),
                                 f_hi - 0.08 * (f_hi - f_lo))
                scale = max(1.0, abs(fh))
                if abs(fh - f_sing(Mp, dh)) < 0.05 * scale:
                    continue
                if abs(fh - f_sing(Mm, dh)) < 0.05 * scale:
                    continue
                p = SystemParams(m_plus=m_p, m_minus=m_m, v0=1.0,
                                 J0=-dh / 4.0, F0=fh / (dh / 2.0))
                run = integrate_until_oscillations(p, n_osc=5)
                emp_p, emp_m = measure_tau_periods(run)
                ref_p = t_of(normalize(p, MassChoice.PLUS))
                ref_m = t_of(normalize(p, MassChoice.MINUS))
                if not (ref_p.ok and ref_m.ok):
                    continue
                worst = max(worst,
                            abs(emp_p.value - ref_p.value) / ref_p.value,
                            abs(emp_m.value - ref_m.value) / ref_m.value)
                done += 1
                n_done += 1
        ok = worst < 1e-5 and n_done == 50
        report(2, "two-center identities", ok,
               f"{n_done} orbits, max rel err = {worst:.2e}")
        assert ok

    def test_criterion_03_representation_web(self):
        rng = np.random.default_rng(3)
        worst_star = 0.0
        for _ in range(100):
            dh = rng.uniform(0.15, 3.5)
            fh = rng.uniform(-0.95, 0.95) * dh
            n = NormalizedParams(1.0, dh, fh)
            a, b = t_star(n), t_down(n)
            worst_star = max(worst_star, abs(a.value - b.value) / b.value)
        worst_circ = 0.0
        worst_gen = 0.0
        n_gen = 0
        for _ in range(100):
            dh = rng.uniform(0.1, 1.95)
            lo, hi = dh, 1.0 + 0.25 * dh * dh
            fh = rng.uniform(lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo))
            n = NormalizedParams(1.0, dh, fh)
            a, b = t_circ(n), t_up(n)
            worst_circ = max(worst_circ, abs(a.value - b.value) / b.value)
            sols = e_omega_solutions(n, 3)
            if len(sols) >= 3:
                vals = [t_general_e_omega(n, e, om).value for e, om in sols]
                worst_gen = max(worst_gen,
                                (max(vals) - min(vals)) / min(vals))
                n_gen += 1
        ok = worst_star < 1e-8 and worst_circ < 1e-8 and worst_gen < 1e-8 \
            and n_gen >= 90
        report(3, "representation web", ok,
               f"star-down {worst_star:.2e}, circ-up {worst_circ:.2e}, "
               f"(e,omega) spread {worst_gen:.2e} on {n_gen} points")
        assert ok

    def test_criterion_04_period_monotonicity(self):
        violations = []
        for dh in np.linspace(0.25, 4.0, 10):
            fs = f_sing(1.0, dh)
            f_lo, _ = f_boundaries(1.0, dh)
            below = np.linspace(f_lo + 0.02 * max(1.0, abs(f_lo)),
                                fs - 1e-4, 50)
            above = np.linspace(fs + 1e-4, fs + 0.8 * max(1.0, fs), 50)
            t_dn = [t_down(NormalizedParams(1.0, dh, f)).value for f in below]
            t_upv = [t_up(NormalizedParams(1.0, dh, f)).value for f in above]
            for i in range(1, len(t_dn) - 1):
                if not t_dn[i + 1] - t_dn[i - 1] > 0:
                    violations.append(("down", dh, below[i]))
            for i in range(1, len(t_upv) - 1):
                if not t_upv[i + 1] - t_upv[i - 1] < 0:
                    violations.append(("up", dh, above[i]))
        ok = not violations
        report(4, "period monotonicity", ok,
               f"10 fibers x 100 samples, {len(violations)} violations")
        assert ok, violations[:5]

    def test_criterion_05_rotation_monotonicity(self):
        mp, mm = 1.0, 0.5
        sign_violations = []
        for dh in np.linspace(0.25, 4.0, 10):
            f_lo, _ = f_boundaries(mm, dh)
            _, f_hi = f_boundaries(mp, dh)
            fs_m, fs_p = f_sing(mm, dh), f_sing(mp, dh)
            width = f_hi - f_lo
            fhs = np.linspace(f_lo + 0.02 * width, f_hi - 0.02 * width, 100)
            region = []
            w_vals = []
            for fh in fhs:
                if min(abs(fh - fs_m), abs(fh - fs_p)) < 1e-4:
                    region.append(None)
                    w_vals.append(np.nan)
                    continue
                rp = t_of(NormalizedParams(mp, dh, fh))
                rm = t_of(NormalizedParams(mm, dh, fh))
                if not (rp.ok and rm.ok):
                    region.append(None)
                    w_vals.append(np.nan)
                    continue
                if fh < fs_m:
                    region.append("WS")
                elif fh < fs_p:
                    region.append("WL")
                else:
                    region.append("WP")
                w_vals.append(rm.value / rp.value)
            expected = {"WS": 1, "WL": -1, "WP": 1}
            for i in range(1, len(fhs) - 1):
                r = region[i]
                if r is None or region[i - 1] != r or region[i + 1] != r:
                    continue
                d = w_vals[i + 1] - w_vals[i - 1]
                if d * expected[r] <= 0:
                    sign_violations.append((dh, fhs[i], r, d))

        # boundary surrogates on the dh = 1 fiber, thresholds as specified
        dh = 1.0
        fs_m, fs_p = f_sing(mm, dh), f_sing(mp, dh)
        n_lo = NormalizedParams(mm, dh, fs_m + 1e-6)
        d_lo = NormalizedParams(mp, dh, fs_m + 1e-6)
        w_near_minus = t_of(n_lo).value / t_of(d_lo).value
        n_hi = NormalizedParams(mm, dh, fs_p - 1e-6)
        d_hi = NormalizedParams(mp, dh, fs_p - 1e-6)
        w_near_plus = t_of(n_hi).value / t_of(d_hi).value

        signs_ok = not sign_violations
        surrogates_ok = w_near_minus > 1e2 and w_near_plus < 1e-2
        ok = signs_ok and surrogates_ok
        report(5, "rotation monotonicity", ok,
               f"signs: {len(sign_violations)} violations; surrogates: "
               f"W(fsing_m+1e-6) = {w_near_minus:.4g} (need > 1e2), "
               f"W(fsing_p-1e-6) = {w_near_plus:.4g} (need < 1e-2)")
        assert signs_ok, sign_violations[:5]
        assert surrogates_ok, (
            "fixed thresholds not reached at the 1e-6 offsets used here: "
            f"measured W = {w_near_minus:.4g} (threshold > 1e2, eps^(-1/4) "
            f"blow-up reaches it only near eps ~ 3e-8) and "
            f"W = {w_near_plus:.4g} (threshold < 1e-2, log-rate divergence "
            "cannot reach it in double precision)")

    def test_criterion_06_divergence(self):
        eps_seq = [10.0**-k for k in range(2, 7)]
        ok = True
        details = []
        for dh in (1.0, 3.0):
            for side in ("Below", "Above"):
                pairs = divergence_probe(1.0, dh, side, eps_seq)
                vals = [t for _, t in pairs]
                mono = all(b > a for a, b in zip(vals, vals[1:]))
                ok = ok and mono
                details.append(f"dh={dh} {side}: {'inc' if mono else 'VIOL'}")
        report(6, "divergence at singular line", ok, "; ".join(details))
        assert ok

    def test_criterion_07_elliptic_lemma(self):
        out = verify_lemma_batch(10000, seed=7)
        ok = out["max_residual"] < 1e-8 and out["max_case_residual"] < 1e-8
        report(7, "elliptic lemma", ok,
               f"{out['n_samples']} samples, max residual "
               f"{out['max_residual']:.2e}, case residual "
               f"{out['max_case_residual']:.2e}, degenerate "
               f"{out['n_degenerate']}")
        assert ok

    def test_criterion_08_real_part_corollary(self):
        rng = np.random.default_rng(8)
        worst = 0.0
        for _ in range(50):
            dh = rng.uniform(0.1, 1.95)
            lo, hi = dh, 1.0 + 0.25 * dh * dh
            fh = rng.uniform(lo + 0.01 * (hi - lo), hi - 1e-6 * (hi - lo))
            tc, tr = real_part_corollary_check(1.0, dh, fh)
            worst = max(worst, abs(tc - tr) / tc)
        ok = worst < 1e-8
        report(8, "real-part corollary", ok, f"max rel diff = {worst:.2e}")
        assert ok

    def test_criterion_09_s_functional_positivity(self):
        rng = np.random.default_rng(9)
        offsets = [1e-1, 1e-2, 1e-3, 1e-4]
        bad = []

        # upper region: approach the three boundary walls
        for off in offsets:
            for (a, b, c, tag) in [
                (off * off, 1.0, 0.5, "M1"),          # mass wall
                (1.0, off * off, 1.2, "M2"),          # vanishing-b wall
                (1.0, 1.0, 1.0 + off, "M3"),          # singular line
            ]:
                if s_up(a, b, c, check=False).S_value <= 0:
                    bad.append(("s_up", tag, off))
        # interior samples with the finite-difference cross-check
        n_interior = 0
        worst_fd = 0.0
        while n_interior < 100:
            a = rng.uniform(0.3, 2.0)
            b = rng.uniform(0.1, 3.0)
            fs = f_sing(math.sqrt(a), math.sqrt(b))
            c = fs + rng.uniform(0.05, 1.0) * max(1.0, fs)
            val = s_up(a, b, c, check=False).S_value
            fd = s_up_finite_difference(a, b, c)
            worst_fd = max(worst_fd, abs(val - fd) / max(abs(val), abs(fd)))
            if val <= 0:
                bad.append(("s_up", "interior", (a, b, c)))
            n_interior += 1

        # lower region: near its three accessible walls plus interior trend
        for off in offsets:
            for (a, b, c, tag) in [
                (0.2, 1.0, 0.45 - off, "M2"),         # parabolic boundary
                (off * off, 1.0, 0.1, "M3"),          # mass wall
                (1.0, off * off, -1.0, "M4"),         # vanishing-b, c < 0
            ]:
                if s_down(a, b, c).S_value <= 0:
                    bad.append(("s_down", tag, off))
        trend = [s_down(1.0, 1.0, 1.0 - off).S_value for off in offsets]
        if not all(b > a for a, b in zip(trend, trend[1:])):
            bad.append(("s_down", "M1-trend", trend))
        if not all(v > 0 for v in trend):
            bad.append(("s_down", "M1-positive", trend))

        # Chebyshev comparison on kernel triples in the monotone regimes
        grid = np.linspace(1e-5, 1.0 - 1e-5, 2001)
        for (a, b, c) in [(1.0, 1.0, 1.05), (1.0, 1.0, 1.2),
                          (0.64, 1.0, 0.85), (0.25, 4.0, 1.3),
                          (0.25, 4.0, 1.6), (0.25, 5.0, 1.6)]:
            mono = kernel_monotonicity(a, b, c)
            if mono["f"] != mono["g"]:
                continue
            lhs, rhs, holds = chebyshev_check(
                kernel_f(a, b, c, grid), kernel_g(a, b, c, grid),
                kernel_p(a, b, c, grid), grid)
            if not holds:
                bad.append(("chebyshev", (a, b, c), lhs - rhs))

        ok = not bad and worst_fd < 1e-5
        report(9, "S-functional positivity", ok,
               f"{len(bad)} violations, interior kernel-vs-fd "
               f"{worst_fd:.2e}")
        assert ok, bad[:5]

    def test_criterion_10_conservation(self):
        # strongly-collision-free representatives (collisions are out of
        # scope and the drift budget presumes staying away from the centers):
        # a Kepler orbit, a generic librating orbit, and an annulus orbit
        # whose radial range stays clear of both centers
        cases = [
            SystemParams(m_plus=1.0, m_minus=0.0, v0=1.0, J0=-0.25, F0=1.0),
            SystemParams(m_plus=1.0, m_minus=0.3, v0=1.0, J0=-0.3, F0=2.0),
            SystemParams(m_plus=1.0, m_minus=0.7, v0=1.0, J0=-0.35, F0=4.0),
        ]
        worst_drift = 0.0
        worst_cof = 0.0
        for p in cases:
            run = integrate_until_oscillations(p, n_osc=10)
            dJ = max(abs(s.J_val - p.J0) for s in run.samples) / abs(p.J0)
            dF = max(abs(s.F_val - p.F0) for s in run.samples) \
                / max(1.0, abs(p.F0))
            worst_drift = max(worst_drift, dJ, dF)
            for s in run.samples[::29]:
                r1 = math.hypot(*s.state.x)
                r2 = math.hypot(s.state.x[0], s.state.x[1] - 2.0 * p.v0)
                worst_cof = max(
                    worst_cof,
                    abs(p.v0 * (s.alpha + s.beta) - r1) / r1,
                    abs(p.v0 * (s.alpha - s.beta) - r2) / max(r2, 1e-6),
                    abs(p.v0**2 * (s.alpha**2 - s.beta**2) - r1 * r2)
                    / (r1 * r2))
        ok = worst_drift < 1e-9 and worst_cof < 1e-10
        report(10, "conservation", ok,
               f"max drift {worst_drift:.2e}, co-focal identity "
               f"{worst_cof:.2e}")
        assert ok

    def test_criterion_11_homogeneity(self):
        a, b, c = 1.0, 1.0, 1.15
        base_t = t_up_normalized(a, b, c)
        base_s = s_up(a, b, c, check=False).S_value
        worst_t = 0.0
        worst_s = 0.0
        for lam in (0.5, 2.0, 10.0):
            t_val = t_up_normalized(lam * a, lam * b, lam * c)
            s_val = s_up(lam * a, lam * b, lam * c, check=False).S_value
            worst_t = max(worst_t,
                          abs(t_val - base_t * lam**-0.5) / abs(t_val))
            worst_s = max(worst_s,
                          abs(s_val - base_s * lam**-3.0) / abs(s_val))
        ok = worst_t < 1e-6 and worst_s < 1e-6
        report(11, "homogeneity", ok,
               f"period {worst_t:.2e}, S-functional {worst_s:.2e}")
        assert ok
