"""Command line front end.

Five subcommands: popularity prints the Zipf table and cache hit
probability, sweep-theta / sweep-density / sweep-threshold reproduce the
standard experiment curves as CSV, and validate cross-checks every
analytical route against the Monte Carlo sampler and reports pass/fail.

All CSV output is deterministic for a fixed configuration and seed: the
effective configuration is echoed as '#' comment lines, floats are
formatted with a fixed rule, and nothing time- or host-dependent is
written. Exit codes: 0 success, 1 validation failure, 2 configuration
error, 3 numerical failure.
"""

import argparse
import dataclasses
import math
import sys
from pathlib import Path

import numpy as np

from .config import ExperimentConfig, load_config
from .content import TierDensities, hit_probability, tier_densities, zipf_popularity
from .errors import ParameterError, QuadratureError
from .metrics import (
    SecrecyThreshold,
    SystemParams,
    avg_secrecy_rate_generic,
    avg_secrecy_rate_normal,
    avg_secrecy_rate_secure,
    cdf_eav_normal,
    cdf_eav_secure,
    cdf_user_normal,
    cdf_user_secure,
    coverage_generic,
    coverage_normal,
    coverage_secure,
)
from .simulate import McConfig, estimate_coverage, estimate_rate, run_trials

__all__ = [
    "cmd_popularity", "cmd_sweep_theta", "cmd_sweep_density",
    "cmd_sweep_threshold", "cmd_validate", "build_parser", "main",
]

_SWEEP_TRIALS = 2000
_VALIDATE_TRIALS = 100_000
_SUP_GATE = 0.01
_CLOSED_GATE = 0.02
_VALIDATE_RS = (0.5, 1.0, 2.0)


# ---------------------------------------------------------------- output

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.10g}"


def _csv_text(command: str, cfg: ExperimentConfig, comments: list[str],
              header: list[str], rows: list[tuple]) -> str:
    lines = [f"# cachesec {command}"]
    lines += [f"# {line}" for line in cfg.echo_lines()]
    lines += [f"# {line}" for line in comments]
    lines.append(",".join(header))
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


# ------------------------------------------------- analytic route dispatch

def _delta(cfg: ExperimentConfig, cache_size: int | None = None) -> float:
    content = cfg.content
    if cache_size is not None:
        content = dataclasses.replace(content, cache_size=cache_size)
    return hit_probability(zipf_popularity(content), content.cache_size)


def _conditional_cdfs(params: SystemParams, tiers: TierDensities):
    """The four conditional SINR distributions as closures of gamma."""
    def f_us(g):
        return cdf_user_secure(g, params, tiers)

    def f_un(g):
        return cdf_user_normal(g, params)

    def f_es(g):
        return cdf_eav_secure(g, params)

    def f_en(g):
        return cdf_eav_normal(g, params)

    return f_us, f_un, f_es, f_en


def _secure_support(params: SystemParams) -> tuple[float, float]:
    th0 = SecrecyThreshold.from_power_split(params.power_split).gamma_th0
    return (0.0, th0) if math.isfinite(th0) else (0.0, math.inf)


def _rate_analytic(params: SystemParams, tiers: TierDensities, mode: str) -> float:
    """Average secrecy rate by the closed route when interference limited,
    otherwise by the definition-level integral over the noise-inclusive
    conditional distributions."""
    if params.interference_limited:
        if mode == "secure":
            return avg_secrecy_rate_secure(params, tiers).value
        return avg_secrecy_rate_normal(params).value
    f_us, f_un, f_es, f_en = _conditional_cdfs(params, tiers)
    if mode == "secure":
        hi = _secure_support(params)[1]
        breakpoints = (hi,) if math.isfinite(hi) else ()
        return avg_secrecy_rate_generic(f_us, f_es, breakpoints=breakpoints).value
    return avg_secrecy_rate_generic(f_un, f_en).value


def _coverage_definition(params: SystemParams, tiers: TierDensities,
                         rate_rs: float, mode: str):
    """Secrecy coverage by the definition-level route. The closed-route
    expressions exist (coverage_secure, coverage_normal) but disagree with
    this route and with Monte Carlo; validate reports the comparison."""
    f_us, f_un, f_es, f_en = _conditional_cdfs(params, tiers)
    if mode == "secure":
        return coverage_generic(f_us, f_es, rate_rs, support=_secure_support(params))
    return coverage_generic(f_un, f_en, rate_rs)


def _default_tiers(cfg: ExperimentConfig, params: SystemParams,
                   cache_size: int | None = None) -> TierDensities:
    return tier_densities(params.lambda_b, params.cache_user_ratio,
                          _delta(cfg, cache_size))


# -------------------------------------------------------------- commands

def cmd_popularity(cfg: ExperimentConfig) -> str:
    profile = zipf_popularity(cfg.content)
    delta = hit_probability(profile, cfg.content.cache_size)
    p = profile.probabilities
    cum = np.cumsum(p)
    rows = [(rank, p[rank - 1], cum[rank - 1]) for rank in range(1, p.size + 1)]
    comments = [
        "units: probabilities dimensionless",
        f"hit probability delta for cache_size {cfg.content.cache_size} = {delta:.10g}",
    ]
    header = ["rank", "probability", "cumulative_probability"]
    return _csv_text("popularity", cfg, comments, header, rows)


def cmd_sweep_theta(cfg: ExperimentConfig) -> str:
    delta = _delta(cfg)
    thetas = cfg.theta_grid.values()
    mc = cfg.mc_config(_SWEEP_TRIALS)
    rows = []
    peaks = []
    for alpha in cfg.theta_alphas:
        tiers = tier_densities(cfg.params.lambda_b, alpha, delta)
        analytic = []
        for theta in thetas:
            params = dataclasses.replace(cfg.params, power_split=float(theta))
            value = _rate_analytic(params, tiers, "secure")
            analytic.append(value)
            if mc is None:
                rows.append((theta, alpha, value, None, None, None))
            else:
                est = estimate_rate(mc, params, tiers, "secure")
                rows.append((theta, alpha, value, est.mean, est.std_error, est.n))
        best = int(np.argmax(analytic))
        peaks.append(f"theta_star alpha={alpha:g}: theta={thetas[best]:.10g} "
                     f"rate={analytic[best]:.10g}")
    comments = [
        "units: rate bits/s/Hz; theta, alpha dimensionless",
        f"grid: theta {cfg.theta_grid.start:g}..{cfg.theta_grid.stop:g}, "
        f"{cfg.theta_grid.points} points, {cfg.theta_grid.spacing}",
    ] + peaks
    header = ["theta", "alpha", "rate_bits_per_s_per_hz",
              "mc_rate_bits_per_s_per_hz", "mc_std_error_bits_per_s_per_hz",
              "trials"]
    return _csv_text("sweep-theta", cfg, comments, header, rows)


def cmd_sweep_density(cfg: ExperimentConfig) -> str:
    ratios = cfg.density_grid.values()
    mc = cfg.mc_config(_SWEEP_TRIALS)
    rows = []
    for ratio in ratios:
        params = dataclasses.replace(cfg.params,
                                     lambda_e=float(ratio) * cfg.params.lambda_b)
        first_samples = None
        secure_rows = []
        for cache_size in cfg.density_cache_sizes:
            tiers = _default_tiers(cfg, params, cache_size)
            value = _rate_analytic(params, tiers, "secure")
            if mc is None:
                secure_rows.append((ratio, "secure", cache_size, value,
                                    None, None, None))
            else:
                samples = run_trials(mc, params, tiers)
                if first_samples is None:
                    first_samples = (tiers, samples)
                est = estimate_rate(mc, params, tiers, "secure", samples=samples)
                secure_rows.append((ratio, "secure", cache_size, value,
                                    est.mean, est.std_error, est.n))
        normal_value = _rate_analytic(params, _default_tiers(cfg, params), "normal")
        if mc is None:
            rows.append((ratio, "normal", None, normal_value, None, None, None))
        else:
            tiers, samples = first_samples
            est = estimate_rate(mc, params, tiers, "normal", samples=samples)
            rows.append((ratio, "normal", None, normal_value,
                         est.mean, est.std_error, est.n))
        rows += secure_rows
    comments = [
        "units: rate bits/s/Hz; lambda ratio dimensionless; cache_size files",
        f"grid: lambda_e/lambda_b {cfg.density_grid.start:g}.."
        f"{cfg.density_grid.stop:g}, {cfg.density_grid.points} points, "
        f"{cfg.density_grid.spacing}",
        "cache_size is empty on normal rows (normal transmission does not cache)",
    ]
    header = ["lambda_e_over_lambda_b", "transmission", "cache_size",
              "rate_bits_per_s_per_hz", "mc_rate_bits_per_s_per_hz",
              "mc_std_error_bits_per_s_per_hz", "trials"]
    return _csv_text("sweep-density", cfg, comments, header, rows)


def cmd_sweep_threshold(cfg: ExperimentConfig) -> str:
    rs_values = cfg.threshold_grid.values()
    mc = cfg.mc_config(_SWEEP_TRIALS)
    rows = []
    for ratio in cfg.threshold_ratios:
        params = dataclasses.replace(cfg.params,
                                     lambda_e=float(ratio) * cfg.params.lambda_b)
        tiers = _default_tiers(cfg, params)
        samples = run_trials(mc, params, tiers) if mc is not None else None
        for rs in rs_values:
            for mode in ("secure", "normal"):
                value = _coverage_definition(params, tiers, float(rs), mode).probability
                if samples is None:
                    rows.append((rs, ratio, mode, value, None, None, None))
                else:
                    est = estimate_coverage(mc, params, tiers, mode, float(rs),
                                            samples=samples)
                    rows.append((rs, ratio, mode, value,
                                 est.mean, est.std_error, est.n))
    comments = [
        "units: rate threshold bits/s/Hz; coverage dimensionless",
        f"grid: rate threshold {cfg.threshold_grid.start:g}.."
        f"{cfg.threshold_grid.stop:g}, {cfg.threshold_grid.points} points, "
        f"{cfg.threshold_grid.spacing}",
        "coverage_probability integrates the definition-level route "
        "(coverage_generic over the conditional SINR distributions); "
        "run validate for the closed-route comparison",
    ]
    header = ["rate_threshold_bits_per_s_per_hz", "lambda_e_over_lambda_b",
              "transmission", "coverage_probability", "mc_coverage_probability",
              "mc_std_error", "trials"]
    return _csv_text("sweep-threshold", cfg, comments, header, rows)


# -------------------------------------------------------------- validate

def _ks_distance(samples: np.ndarray, cdf) -> float:
    """Sup distance between the empirical distribution and a model CDF."""
    x = np.sort(samples[np.isfinite(samples)])
    n = x.size
    f = np.fromiter((cdf(float(v)) for v in x), dtype=float, count=n)
    steps = np.arange(n + 1) / n
    return float(max(np.max(steps[1:] - f), np.max(f - steps[:-1])))


def _check(rows, report, status, name, detail):
    rows.append((name, status, detail))
    report.append(f"  {status:<5} {name}: {detail}")


def cmd_validate(cfg: ExperimentConfig) -> tuple[str, str, bool]:
    """Cross-check every analytical route against Monte Carlo.

    Returns (text report, CSV of check rows, overall pass flag). Sampling
    always runs decoupled: the product-form expressions under test assume
    the user and eavesdropper statistics are evaluated on independent
    realizations.
    """
    params = cfg.params
    trials = cfg.trials if cfg.trials > 0 else _VALIDATE_TRIALS
    mc = McConfig(trials=trials, seed=cfg.seed,
                  window_radius_m=cfg.window_radius_m,
                  coupling_mode="decoupled",
                  include_noise=not params.interference_limited)
    tiers = _default_tiers(cfg, params)
    samples = run_trials(mc, params, tiers)
    f_us, f_un, f_es, f_en = _conditional_cdfs(params, tiers)

    rows: list[tuple] = []
    report = ["cachesec validate", ""]
    report += ["  " + line for line in cfg.echo_lines()]
    report += [f"  sampling: {trials} decoupled trials, seed {cfg.seed}", ""]

    for name, data, cdf in (
        ("sup_distance user_normal", samples.user_normal, f_un),
        ("sup_distance user_secure", samples.user_secure, f_us),
        ("sup_distance eav_normal", samples.eav_normal, f_en),
        ("sup_distance eav_secure", samples.eav_secure, f_es),
    ):
        d = _ks_distance(data, cdf)
        status = "PASS" if d <= _SUP_GATE else "FAIL"
        noise = 1.36 / math.sqrt(trials)
        _check(rows, report, status, name,
               f"{d:.6f} (gate {_SUP_GATE:g}, sampling noise ~{noise:.4f})")

    for mode in ("secure", "normal"):
        analytic = _rate_analytic(params, tiers, mode)
        est = estimate_rate(mc, params, tiers, mode, samples=samples)
        gate = max(0.03 * abs(analytic), 3.0 * est.std_error)
        err = abs(est.mean - analytic)
        status = "PASS" if err <= gate else "FAIL"
        _check(rows, report, status, f"rate {mode}",
               f"mc {est.mean:.6f} vs analytic {analytic:.6f}, "
               f"|diff| {err:.6f} (gate {gate:.6f})")

    closed_gaps = []
    for rs in _VALIDATE_RS:
        for mode in ("secure", "normal"):
            definition = _coverage_definition(params, tiers, rs, mode)
            est = estimate_coverage(mc, params, tiers, mode, rs, samples=samples)
            gate = 3.0 * est.std_error + definition.quadrature_error_bound + 1e-9
            err = abs(est.mean - definition.probability)
            status = "PASS" if err <= gate else "FAIL"
            _check(rows, report, status, f"coverage {mode} Rs={rs:g}",
                   f"mc {est.mean:.6f} vs definition {definition.probability:.6f}, "
                   f"|diff| {err:.6f} (gate {gate:.6f})")
            if params.interference_limited:
                if mode == "secure":
                    closed = coverage_secure(params, tiers, rs).probability
                else:
                    closed = coverage_normal(params, rs).probability
                ref = max(definition.probability, 1e-12)
                gap = (closed - definition.probability) / ref
                status = "PASS" if abs(gap) <= _CLOSED_GATE else "FLAG"
                closed_gaps.append((mode, rs, gap, status))
                _check(rows, report, status, f"closed coverage {mode} Rs={rs:g}",
                       f"closed {closed:.6f} vs definition "
                       f"{definition.probability:.6f}, gap {gap:+.1%} "
                       f"(gate {_CLOSED_GATE:.0%})")

    theta = params.power_split
    if theta < 1.0:
        ceiling = theta / (1.0 - theta)
        observed = float(np.max(samples.eav_secure))
        status = "PASS" if observed <= ceiling + 1e-12 else "FAIL"
        _check(rows, report, status, "secure eav SINR ceiling",
               f"max sample {observed:.12g} vs theta/(1-theta) = {ceiling:.12g}")
    else:
        _check(rows, report, "PASS", "secure eav SINR ceiling",
               "theta = 1 leaves the SINR unbounded; nothing to audit")

    report.append("")
    eav_sup_failed = any(r[1] == "FAIL" and r[0].startswith("sup_distance eav")
                         for r in rows)
    if eav_sup_failed:
        report += [
            "note on the eavesdropper-side gates:",
            "  The eavesdropper distributions are modeled with two standard",
            "  simplifications: each eavesdropper's interference field is",
            "  averaged independently (the shared base-station draw couples",
            "  them), and the vacant region around the serving base station",
            "  that nearest-BS association creates is ignored. The simulator",
            "  implements the literal max-SINR construction, so the",
            "  eavesdropper-side residuals above plateau near 0.05 instead of",
            "  shrinking with the trial count. User-side distributions carry",
            "  no such simplification and converge to their gate as trials",
            "  grow; a user-side failure well above the sampling noise",
            "  indicates a real defect.",
            "",
        ]
    flagged = [g for g in closed_gaps if g[3] == "FLAG"]
    if flagged:
        worst = max(abs(g[2]) for g in flagged)
        report += [
            "adjudication:",
            "  The closed-route coverage expressions (coverage_secure,",
            "  coverage_normal) disagree with the definition-level route by up",
            f"  to {worst:.0%}, far beyond quadrature tolerance, while the",
            "  definition-level route matches Monte Carlo within statistical",
            "  error above. The closed expressions carry a transcription",
            "  defect; the definition-level route is authoritative and is what",
            "  sweep-threshold reports.",
        ]
    elif closed_gaps:
        report += [
            "adjudication:",
            "  The closed-route coverage expressions agree with the",
            "  definition-level route within tolerance at every tested",
            "  threshold; either route may be used.",
        ]
    else:
        report += [
            "adjudication:",
            "  Closed-route coverage is undefined outside the",
            "  interference-limited regime; only the definition-level route",
            "  was checked.",
        ]

    n_pass = sum(1 for r in rows if r[1] == "PASS")
    n_fail = sum(1 for r in rows if r[1] == "FAIL")
    n_flag = sum(1 for r in rows if r[1] == "FLAG")
    ok = n_fail == 0
    report += ["", f"summary: {n_pass} passed, {n_fail} failed, {n_flag} flagged",
               f"result: {'OK' if ok else 'FAIL'}", ""]
    csv = _csv_text("validate", cfg, ["columns: check, status, detail"],
                    ["check", "status", "detail"],
                    [(name, status, f'"{detail}"') for name, status, detail in rows])
    return "\n".join(report), csv, ok


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="INI configuration file")
    common.add_argument("--seed", type=int, help="Monte Carlo seed")
    common.add_argument("--trials", type=int, help="Monte Carlo trials")
    common.add_argument("--window-km", type=float, dest="window_km",
                        help="simulation window radius in km")
    common.add_argument("--out", metavar="FILE",
                        help="write CSV here instead of stdout")
    common.add_argument("--mc", choices=("off", "decoupled", "coupled"),
                        help="Monte Carlo columns: off, or the sampling mode")
    common.add_argument("--noise", choices=("on", "off"),
                        help="include receiver noise (default off: "
                             "interference limited)")

    parser = argparse.ArgumentParser(
        prog="cachesec",
        description="Secrecy metrics of a cache-enabled heterogeneous "
                    "network: analytical routes cross-validated against "
                    "stochastic-geometry Monte Carlo.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("popularity", parents=[common],
                   help="Zipf popularity table and cache hit probability")
    sub.add_parser("sweep-theta", parents=[common],
                   help="secure-rate curve over the power split theta, "
                        "one curve per offloading ratio alpha")
    sub.add_parser("sweep-density", parents=[common],
                   help="rate curves over the eavesdropper/BS density ratio, "
                        "secure per cache size plus normal")
    sub.add_parser("sweep-threshold", parents=[common],
                   help="secrecy coverage over the rate threshold per "
                        "density ratio")
    sub.add_parser("validate", parents=[common],
                   help="cross-check analytical routes against Monte Carlo")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    ov = {}
    if args.seed is not None:
        ov[("monte_carlo", "seed")] = args.seed
    if args.trials is not None:
        ov[("monte_carlo", "trials")] = args.trials
    if args.window_km is not None:
        ov[("monte_carlo", "window_radius_m")] = args.window_km * 1000.0
    if args.mc is not None:
        ov[("monte_carlo", "mode")] = args.mc
    if args.noise is not None:
        ov[("system", "noise")] = args.noise == "on"
    return ov


_COMMANDS = {
    "popularity": cmd_popularity,
    "sweep-theta": cmd_sweep_theta,
    "sweep-density": cmd_sweep_density,
    "sweep-threshold": cmd_sweep_threshold,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, _overrides(args))
        if args.command == "validate":
            text, csv, ok = cmd_validate(cfg)
            sys.stdout.write(text)
            if args.out:
                Path(args.out).write_text(csv)
            return 0 if ok else 1
        csv = _COMMANDS[args.command](cfg)
        if args.out:
            Path(args.out).write_text(csv)
        else:
            sys.stdout.write(csv)
        return 0
    except ParameterError as exc:
        print(f"cachesec: configuration error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"cachesec: numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
