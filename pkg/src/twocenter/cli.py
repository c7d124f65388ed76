"""Command-line front end.

Subcommands: classify, period, rotation, scan, verify, oracle.  Parameters
can be given either physically (--m-plus/--m-minus as the two masses plus
--v0/--j0/--f0-physical) or in normalized form (--delta/--f, in which case
--m-plus/--m-minus are the mass *sums* used by the period formulas); mixing
the two styles is a usage error.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.
Scans and verification batches are deterministic for a fixed seed; floats are
printed with 17 significant digits.  TWOCENTER_THREADS caps the worker count
of batch subcommands.
"""

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._backend import thread_count
from .elliptic_identities import real_part_corollary_check, verify_lemma_batch
from .errors import TwoCenterError
from .monotonicity import chebyshev_check, divergence_probe, kernel_f, kernel_g, \
    kernel_monotonicity, kernel_p, log_slopes, s_down, s_up, scan_fiber
from .param_domain import NormalizedParams, SystemParams, classify, f_sing
from .period_engine import (
    PeriodStatus,
    e_omega_solutions,
    rotation_number,
    t_circ,
    t_down,
    t_general_e_omega,
    t_of,
    t_star,
    t_up,
)
from .quadrature import QuadratureSpec
from . import dynamics_oracle as oracle_mod
from .param_domain import MassChoice, normalize

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output_format: str = "json"
    output_path: str | None = None
    seed: int = 7
    quadrature: QuadratureSpec | None = None


def _fmt(x):
    """JSON payload floats go through as-is: repr round-trips exactly."""
    return float(x) if isinstance(x, (int, float)) else x


def _emit(text, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _pmap(fn, items):
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _normalized_from_args(args, need_masses=True):
    """Resolve the physical-vs-normalized input exclusivity.

    Returns (M_plus, M_minus, delta0_hat, F0_hat, v0); raises SystemExit(2)
    on mixed styles.
    """
    physical = args.j0 is not None or args.f0_physical is not None
    normalized = args.delta is not None or args.f is not None
    if physical and normalized:
        print("error: give either --j0/--f0-physical or --delta/--f, not both",
              file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    v0 = args.v0 if args.v0 is not None else 1.0
    if physical:
        if args.j0 is None or args.f0_physical is None:
            print("error: physical input needs both --j0 and --f0-physical",
                  file=sys.stderr)
            raise SystemExit(EXIT_USAGE)
        p = SystemParams(m_plus=args.m_plus, m_minus=args.m_minus, v0=v0,
                         J0=args.j0, F0=args.f0_physical)
        return p.M_plus, p.M_minus, -4.0 * v0 * args.j0, \
            -2.0 * args.j0 * args.f0_physical, v0
    if args.delta is None or args.f is None:
        print("error: normalized input needs both --delta and --f",
              file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    return args.m_plus, args.m_minus, args.delta, args.f, v0


def _system_params(mp, mm, dh, fh, v0):
    """Physical parameters reproducing the normalized point with the mass
    sums (mp, mm): m_plus = (mp + mm)/2, m_minus = (mp - mm)/2."""
    J0 = -dh / (4.0 * v0)
    F0 = fh / (-2.0 * J0)
    return SystemParams(m_plus=0.5 * (mp + mm), m_minus=0.5 * (mp - mm),
                        v0=v0, J0=J0, F0=F0)


# ---------------------------------------------------------------------------
# subcommand implementations

def _cmd_classify(cfg):
    mp, mm, dh, fh, v0 = cfg.params["resolved"]
    label = classify(mp, mm, dh, fh)
    payload = {
        "region": label.w_region.value if label.w_region else None,
        "period_region": label.period_region.value,
        "distance_to_singular": _fmt(label.distance_to_singular),
        "f_sing_m_plus": _fmt(f_sing(mp, dh)),
        "f_sing_m_minus": _fmt(f_sing(mm, dh)),
        "delta0_hat": _fmt(dh),
        "F0_hat": _fmt(fh),
    }
    _emit(_json_dump(payload), cfg.output_path)
    return EXIT_OK


_REPS = {
    "auto": t_of,
    "down": t_down,
    "up": t_up,
    "star": t_star,
    "circ": t_circ,
}


def _cmd_period(cfg):
    args = cfg.params["args"]
    n = NormalizedParams(M=args.mass, delta0_hat=args.delta, F0_hat=args.f,
                         v0=args.v0 if args.v0 is not None else 1.0)
    res = _REPS[args.representation](n, cfg.quadrature)
    payload = {
        "value": _fmt(res.value),
        "err_estimate": _fmt(res.err_estimate),
        "representation": res.representation.value,
        "status": res.status.value,
    }
    _emit(_json_dump(payload), cfg.output_path)
    return EXIT_OK if res.status != PeriodStatus.OUT_OF_DOMAIN else EXIT_DOMAIN


def _cmd_rotation(cfg):
    mp, mm, dh, fh, v0 = cfg.params["resolved"]
    p = _system_params(mp, mm, dh, fh, v0)
    res = rotation_number(p, cfg.quadrature)
    payload = {
        "W": _fmt(res.W),
        "branch": res.branch,
        "T_plus": _fmt(res.T_plus.value),
        "T_minus": _fmt(res.T_minus.value),
        "status_plus": res.T_plus.status.value,
        "status_minus": res.T_minus.status.value,
    }
    _emit(_json_dump(payload), cfg.output_path)
    return EXIT_OK


_SIGN_CHAR = {1: "+", -1: "-", 0: "0"}


def _cmd_scan(cfg):
    args = cfg.params["args"]
    v0 = args.v0 if args.v0 is not None else 1.0
    fs = scan_fiber(args.m_plus, args.m_minus, args.delta,
                    (args.f_min, args.f_max), args.n, v0, cfg.quadrature)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["F0_hat", "T_plus", "T_minus", "W", "region", "dW_sign"])
    for i in range(fs.F0_values.size):
        writer.writerow([
            format(fs.F0_values[i], ".17g"),
            format(fs.T_plus[i], ".17g"),
            format(fs.T_minus[i], ".17g"),
            format(fs.W[i], ".17g"),
            fs.regions[i],
            _SIGN_CHAR[int(fs.dW_signs[i])] if fs.sign_valid[i] else "",
        ])
    _emit(buf.getvalue(), cfg.output_path)
    return EXIT_OK


def _verify_lemma(cfg, lines):
    args = cfg.params["args"]
    out = verify_lemma_batch(args.samples, cfg.seed)
    ok = out["max_residual"] < 1e-8 and out["max_case_residual"] < 1e-8
    lines.append(
        "verify lemma: samples=%d max_residual=%.3e max_case_residual=%.3e "
        "status=%s" % (out["n_samples"], out["max_residual"],
                       out["max_case_residual"], "PASS" if ok else "FAIL"))
    return ok


def _verify_representations(cfg, lines):
    rng = np.random.default_rng(cfg.seed)
    n_pts = cfg.params["args"].points
    worst = 0.0

    def one_point(_):
        M = 1.0
        dh = rng.uniform(0.3, 1.8)
        # a strip point (t_star vs t_down) and a triangle point (t_circ vs t_up)
        fh_strip = rng.uniform(-0.9, 0.9) * M * dh
        n1 = NormalizedParams(M, dh, fh_strip)
        r1 = abs(t_star(n1).value - t_down(n1).value) / t_down(n1).value
        lo = M * dh
        hi = M * M + 0.25 * dh * dh
        fh_tri = lo + rng.uniform(0.1, 0.9) * (hi - lo)
        n2 = NormalizedParams(M, dh, fh_tri)
        r2 = abs(t_circ(n2).value - t_up(n2).value) / t_up(n2).value
        vals = [t_general_e_omega(n2, e, om).value
                for e, om in e_omega_solutions(n2, 3)]
        r3 = (max(vals) - min(vals)) / min(vals) if len(vals) >= 2 else 0.0
        return max(r1, r2, r3)

    # sequential: the rng is shared state
    for _ in range(n_pts):
        worst = max(worst, one_point(None))
    ok = worst < 1e-8
    lines.append("verify representations: points=%d max_residual=%.3e status=%s"
                 % (n_pts, worst, "PASS" if ok else "FAIL"))
    return ok


def _verify_corollary(cfg, lines):
    rng = np.random.default_rng(cfg.seed)
    n_pts = cfg.params["args"].points
    worst = 0.0
    for _ in range(n_pts):
        M = 1.0
        dh = rng.uniform(0.2, 1.9)
        lo, hi = M * dh, M * M + 0.25 * dh * dh
        fh = lo + rng.uniform(0.05, 1.0) * (hi - lo)
        tc, tr = real_part_corollary_check(M, dh, fh)
        worst = max(worst, abs(tc - tr) / tc)
    ok = worst < 1e-8
    lines.append("verify corollary: points=%d max_residual=%.3e status=%s"
                 % (n_pts, worst, "PASS" if ok else "FAIL"))
    return ok


def _verify_monotonicity(cfg, lines):
    expected = {"T_plus": {"DS": "increasing", "DL": "increasing",
                           "DP": "decreasing"},
                "T_minus": {"DS": "increasing", "DL": "decreasing",
                            "DP": "decreasing"},
                "W": {"DS": "increasing", "DL": "decreasing",
                      "DP": "increasing"}}
    bad = []

    def one_fiber(dh):
        fs = scan_fiber(1.0, 0.5, dh, (-0.45 * dh, 1.0 + 0.24 * dh * dh), 60)
        out = []
        for (qty, region), verdict in fs.verdicts.items():
            want = expected[qty][region]
            if verdict not in (want, "insufficient"):
                out.append((dh, qty, region, verdict))
        return out

    for chunk in _pmap(one_fiber, [0.5, 1.0, 1.5]):
        bad.extend(chunk)
    ok = not bad
    lines.append("verify monotonicity: fibers=3 violations=%d status=%s"
                 % (len(bad), "PASS" if ok else "FAIL"))
    for item in bad:
        lines.append("  violation: %s" % (item,))
    return ok


def _verify_divergence(cfg, lines):
    ok = True
    for dh in (1.0, 3.0):
        for side in ("Below", "Above"):
            pairs = divergence_probe(1.0, dh, side, [10.0**-k for k in range(2, 7)])
            vals = [t for _, t in pairs]
            mono = all(b > a for a, b in zip(vals, vals[1:]))
            ok = ok and mono
            lines.append(
                "verify divergence: delta=%g side=%s monotone=%s slope[-1]=%.4g"
                % (dh, side, mono, log_slopes(pairs)[-1]))
    lines.append("verify divergence: status=%s" % ("PASS" if ok else "FAIL"))
    return ok


def _verify_sfunctionals(cfg, lines):
    rng = np.random.default_rng(cfg.seed)
    n_pts = max(10, cfg.params["args"].points // 5)
    neg = 0
    for _ in range(n_pts):
        a = rng.uniform(0.3, 2.0)
        b = rng.uniform(0.1, 3.0)
        fs = f_sing(math.sqrt(a), math.sqrt(b))
        c_up = fs + rng.uniform(0.05, 1.0) * (a + 0.25 * b - fs + 0.3)
        c_dn = fs - rng.uniform(0.05, 1.0) * (fs + math.sqrt(a) * math.sqrt(b) + 0.3)
        if s_up(a, b, c_up, check=False).S_value <= 0:
            neg += 1
        if s_down(a, b, c_dn).S_value <= 0:
            neg += 1
    ok = neg == 0
    lines.append("verify sfunctionals: points=%d nonpositive=%d status=%s"
                 % (2 * n_pts, neg, "PASS" if ok else "FAIL"))
    return ok


def _verify_chebyshev(cfg, lines):
    rng = np.random.default_rng(cfg.seed)
    n_pts = max(10, cfg.params["args"].points // 5)
    grid = np.linspace(1e-4, 1.0 - 1e-4, 801)
    bad = 0
    for _ in range(n_pts):
        a = rng.uniform(0.3, 2.0)
        b = rng.uniform(0.1, 3.0)
        fs = f_sing(math.sqrt(a), math.sqrt(b))
        c = fs * (1.0 + rng.uniform(0.02, 0.5))
        mono = kernel_monotonicity(a, b, c)
        if mono["f"] != mono["g"]:
            continue
        f = kernel_f(a, b, c, grid)
        g = kernel_g(a, b, c, grid)
        p = kernel_p(a, b, c, grid)
        lhs, rhs, holds = chebyshev_check(f, g, p, grid)
        if not holds:
            bad += 1
    ok = bad == 0
    lines.append("verify chebyshev: points=%d violations=%d status=%s"
                 % (n_pts, bad, "PASS" if ok else "FAIL"))
    return ok


_VERIFIERS = {
    "lemma": _verify_lemma,
    "representations": _verify_representations,
    "corollary": _verify_corollary,
    "monotonicity": _verify_monotonicity,
    "divergence": _verify_divergence,
    "sfunctionals": _verify_sfunctionals,
    "chebyshev": _verify_chebyshev,
}


def _cmd_verify(cfg):
    which = cfg.params["args"].check
    names = list(_VERIFIERS) if which == "all" else [which]
    lines = []
    all_ok = True
    for name in names:
        all_ok = _VERIFIERS[name](cfg, lines) and all_ok
    _emit("\n".join(lines) + "\n", cfg.output_path)
    return EXIT_OK if all_ok else EXIT_VERIFY_FAIL


def _cmd_oracle(cfg):
    args = cfg.params["args"]
    mp, mm, dh, fh, v0 = cfg.params["resolved"]
    p = _system_params(mp, mm, dh, fh, v0)
    run = oracle_mod.integrate_until_oscillations(p, n_osc=args.oscillations)
    emp_p, emp_m = oracle_mod.measure_tau_periods(run)
    quad_p = t_of(normalize(p, MassChoice.PLUS), cfg.quadrature)
    quad_m = t_of(normalize(p, MassChoice.MINUS), cfg.quadrature)
    drift_J = max(abs(s.J_val - p.J0) for s in run.samples) / abs(p.J0)
    drift_F = max(abs(s.F_val - p.F0) for s in run.samples) / max(1.0, abs(p.F0))
    payload = {
        "T_plus_empirical": _fmt(emp_p.value),
        "T_minus_empirical": _fmt(emp_m.value),
        "T_plus_quadrature": _fmt(quad_p.value),
        "T_minus_quadrature": _fmt(quad_m.value),
        "rel_err_plus": _fmt(abs(emp_p.value - quad_p.value) / quad_p.value),
        "rel_err_minus": _fmt(abs(emp_m.value - quad_m.value) / quad_m.value),
        "J_drift": _fmt(drift_J),
        "F_drift": _fmt(drift_F),
        "n_cycles_plus": emp_p.n_cycles,
        "n_cycles_minus": emp_m.n_cycles,
    }
    text = _json_dump(payload)
    if args.trajectory_out:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "tau", "q1", "q2", "p1", "p2",
                         "alpha", "beta", "J", "F"])
        for s in run.samples:
            writer.writerow([format(v, ".17g") for v in
                             (s.t, s.tau, s.state.x[0], s.state.x[1],
                              s.state.y[0], s.state.y[1], s.alpha, s.beta,
                              s.J_val, s.F_val)])
        with open(args.trajectory_out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    _emit(text, cfg.output_path)
    return EXIT_OK


_COMMANDS = {
    "classify": _cmd_classify,
    "period": _cmd_period,
    "rotation": _cmd_rotation,
    "scan": _cmd_scan,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
}


def _add_param_style(sub, masses=True):
    if masses:
        sub.add_argument("--m-plus", type=float, required=True)
        sub.add_argument("--m-minus", type=float, required=True)
    sub.add_argument("--v0", type=float, default=None)
    sub.add_argument("--j0", type=float, default=None,
                     help="physical energy level (requires --f0-physical)")
    sub.add_argument("--f0-physical", type=float, default=None,
                     help="physical first-integral level (requires --j0)")
    sub.add_argument("--delta", type=float, default=None,
                     help="normalized delta0_hat (requires --f)")
    sub.add_argument("--f", type=float, default=None,
                     help="normalized F0_hat (requires --delta)")


def _add_common(sub):
    sub.add_argument("--out", default=None, help="write output to this path")
    sub.add_argument("--seed", type=int, default=7)
    sub.add_argument("--rel-tol", type=float, default=None)
    sub.add_argument("--abs-tol", type=float, default=None)
    sub.add_argument("--max-levels", type=int, default=None)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="twocenter",
        description="periods and rotation numbers of the planar "
                    "two-fixed-center problem")
    sp = ap.add_subparsers(dest="command", required=True)

    c = sp.add_parser("classify", help="region classification of a point")
    _add_param_style(c)
    _add_common(c)

    c = sp.add_parser("period", help="one period value")
    c.add_argument("--mass", type=float, required=True)
    c.add_argument("--delta", type=float, required=True)
    c.add_argument("--f", type=float, required=True)
    c.add_argument("--v0", type=float, default=None)
    c.add_argument("--representation", choices=sorted(_REPS), default="auto")
    _add_common(c)

    c = sp.add_parser("rotation", help="rotation number at a point")
    _add_param_style(c)
    _add_common(c)

    c = sp.add_parser("scan", help="fiber scan to CSV")
    c.add_argument("--m-plus", type=float, required=True)
    c.add_argument("--m-minus", type=float, required=True)
    c.add_argument("--delta", type=float, required=True)
    c.add_argument("--f-min", type=float, required=True)
    c.add_argument("--f-max", type=float, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--v0", type=float, default=None)
    _add_common(c)

    c = sp.add_parser("verify", help="identity verification suites")
    c.add_argument("check", choices=sorted([*_VERIFIERS, "all"]))
    c.add_argument("--samples", type=int, default=10000)
    c.add_argument("--points", type=int, default=50)
    _add_common(c)

    c = sp.add_parser("oracle", help="integrate an orbit and compare periods")
    _add_param_style(c)
    c.add_argument("--oscillations", type=int, default=10)
    c.add_argument("--trajectory-out", default=None,
                   help="write the sampled trajectory to this CSV path")
    _add_common(c)
    return ap


def run(cfg):
    """Dispatch a RunConfig; returns the process exit code."""
    try:
        return _COMMANDS[cfg.command](cfg)
    except TwoCenterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    spec = None
    if args.rel_tol is not None or args.abs_tol is not None \
            or args.max_levels is not None:
        spec = QuadratureSpec(
            target_rel_tol=args.rel_tol if args.rel_tol is not None else 1e-10,
            target_abs_tol=args.abs_tol if args.abs_tol is not None else 1e-14,
            max_levels=args.max_levels,
        )
    cfg = RunConfig(command=args.command, output_path=args.out,
                    seed=args.seed, quadrature=spec)
    cfg.params["args"] = args
    if args.command in ("classify", "rotation", "oracle"):
        cfg.params["resolved"] = _normalized_from_args(args)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
