"""Analytical secrecy metrics for the cache-aided network model.

Closed-form CDFs of the four SINRs (served user / strongest eavesdropper,
secure / normal transmission), the average secrecy rates, and the secrecy
coverage probabilities, plus definition-level generic engines that compute
rate and coverage directly from arbitrary CDF callables. The generic
engines serve as internal oracles: the specialized routines substitute the
closed CDFs into the same defining integrals, so the two routes must agree
up to quadrature error wherever the specialized derivations are sound.

Unit conventions: densities are stored per km^2 and converted to per m^2
internally, distances are meters, powers convert from dBm to watts. SINR
is dimensionless, so the choice only matters for the thermal-noise term.
"""

import math
import warnings
from dataclasses import dataclass

from .content import TierDensities
from .errors import ParameterError, PathlossError
from .special import (
    QuadratureSpec,
    g_kernel,
    gamma_product,
    integrate_detail,
    z_kernel,
)

__all__ = [
    "SystemParams",
    "SecrecyThreshold",
    "RateResult",
    "CoverageResult",
    "cdf_user_secure",
    "cdf_eav_secure",
    "cdf_user_normal",
    "cdf_eav_normal",
    "avg_secrecy_rate_secure",
    "avg_secrecy_rate_normal",
    "avg_secrecy_rate_generic",
    "coverage_secure",
    "coverage_normal",
    "coverage_generic",
]

_LN2 = math.log(2.0)
_DEFAULT_SPEC = QuadratureSpec()
# The generic engines difference CDFs numerically, which puts a noise floor
# around 1e-10 on their integrands; keep quadrature targets above it.
_DIFF_SPEC = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-7)


@dataclass(frozen=True)
class SystemParams:
    """Network-level parameters.

    Densities are per km^2. power_split is the fraction theta of transmit
    power put on the information signal during secure transmission (the
    rest drives the artificial-noise overlay). With interference_limited
    set, thermal noise is treated as exactly zero and the closed-form
    reductions are used throughout.
    """

    lambda_b: float = 1.0
    lambda_e: float = 5.0
    lambda_u: float = 100.0
    tx_power_dbm: float = 30.0
    noise_dbm: float = -174.0
    pathloss_beta: float = 4.0
    power_split: float = 0.5
    cache_user_ratio: float = 0.5
    interference_limited: bool = True

    def __post_init__(self):
        if self.lambda_b <= 0:
            raise ParameterError(f"lambda_b must be > 0, got {self.lambda_b}")
        if self.lambda_u <= 0:
            raise ParameterError(f"lambda_u must be > 0, got {self.lambda_u}")
        if self.lambda_e < 0:
            raise ParameterError(f"lambda_e must be >= 0, got {self.lambda_e}")
        if not 0 < self.power_split <= 1:
            raise ParameterError(f"power_split must be in (0,1], got {self.power_split}")
        if not 0 <= self.cache_user_ratio <= 1:
            raise ParameterError(
                f"cache_user_ratio must be in [0,1], got {self.cache_user_ratio}"
            )
        if not 2.0 + 1e-9 < self.pathloss_beta <= 4.0:
            raise PathlossError(
                f"pathloss_beta must lie in (2, 4], got {self.pathloss_beta}"
            )

    @property
    def tx_power_w(self) -> float:
        return 10.0 ** ((self.tx_power_dbm - 30.0) / 10.0)

    @property
    def noise_w(self) -> float:
        if self.interference_limited:
            return 0.0
        return 10.0 ** ((self.noise_dbm - 30.0) / 10.0)

    @property
    def eav_ratio(self) -> float:
        """Eavesdropper-to-BS density ratio lambda_e / lambda_b."""
        return self.lambda_e / self.lambda_b


@dataclass(frozen=True)
class SecrecyThreshold:
    """Hard SINR ceiling gamma_th0 = theta/(1-theta) for secure-mode eavesdroppers.

    The artificial-noise overlay bounds the eavesdropper SINR above by this
    value regardless of geometry; theta = 1 degenerates it to +inf.
    """

    gamma_th0: float

    def __post_init__(self):
        if not self.gamma_th0 > 0:
            raise ParameterError(f"gamma_th0 must be > 0, got {self.gamma_th0}")

    @classmethod
    def from_power_split(cls, power_split: float) -> "SecrecyThreshold":
        if not 0 < power_split <= 1:
            raise ParameterError(f"power_split must be in (0,1], got {power_split}")
        if power_split == 1.0:
            return cls(math.inf)
        return cls(power_split / (1.0 - power_split))


@dataclass(frozen=True)
class RateResult:
    """Average secrecy rate in bits/s/Hz with its quadrature error bound."""

    value: float
    quadrature_error_bound: float

    def __post_init__(self):
        if self.value < 0:
            raise ParameterError(f"rate must be >= 0, got {self.value}")


@dataclass(frozen=True)
class CoverageResult:
    """Secrecy coverage probability with its quadrature error bound."""

    probability: float
    quadrature_error_bound: float

    def __post_init__(self):
        if not 0.0 <= self.probability <= 1.0:
            raise ParameterError(
                f"probability must lie in [0,1], got {self.probability}"
            )


def _tier_fractions(params: SystemParams, tiers: TierDensities) -> tuple[float, float]:
    total = tiers.lambda_b
    if abs(total - params.lambda_b) > 1e-9 * max(1.0, params.lambda_b):
        raise ParameterError(
            f"tier densities sum to {total}, inconsistent with lambda_b={params.lambda_b}"
        )
    r1, _, r3 = tiers.fractions()
    return r1, r3

def _w_bracket(gamma_th: float, theta: float) -> float:
    # gamma/(theta - (1-theta)*gamma); +inf at the branch point and beyond.
    den = theta - (1.0 - theta) * gamma_th
    if den <= 0.0:
        return math.inf
    return gamma_th / den


def _radial_survival(a_coef: float, b_coef: float, beta: float,
                     spec: QuadratureSpec) -> float:
    """integral_0^inf exp(-a*y - b*y^{beta/2}) dy.

    The nearest-serving-distance average after substituting
    y = pi*lambda_b*x^2; b carries the thermal-noise term and vanishes in
    the interference-limited regime.
    """
    if b_coef == 0.0:
        return 1.0 / a_coef
    return integrate_detail(
        lambda y: math.exp(-a_coef * y - b_coef * y ** (beta / 2.0)),
        0.0,
        math.inf,
        spec,
    )[0]


def _noise_coef(params: SystemParams, sinr_scale: float) -> float:
    # sigma^2 * sinr_scale / P, expressed in the y = pi*lambda_b*x^2 variable.
    lam_b_m2 = params.lambda_b * 1e-6
    return (
        params.noise_w * sinr_scale / params.tx_power_w
        * (math.pi * lam_b_m2) ** (-params.pathloss_beta / 2.0)
    )


def cdf_user_secure(gamma_th: float, params: SystemParams,
                    tiers: TierDensities, spec: QuadratureSpec | None = None) -> float:
    """CDF of the served user's SINR under secure transmission.

    Interference-limited form: 1 - 1/(Z(g)*r1 + Z(g/theta)*r3 + 1) where
    r_i are the tier fractions; the artificial noise of other secure BSs
    is already cancelled in tier 1 and scales tier 3 by 1/theta.
    """
    if gamma_th < 0:
        raise ParameterError(f"gamma_th must be >= 0, got {gamma_th}")
    if gamma_th == 0:
        return 0.0
    r1, r3 = _tier_fractions(params, tiers)
    beta = params.pathloss_beta
    theta = params.power_split
    load = (
        r1 * z_kernel(gamma_th, beta)
        + r3 * z_kernel(gamma_th / theta, beta)
    )
    if params.interference_limited:
        return 1.0 - 1.0 / (1.0 + load)
    b = _noise_coef(params, gamma_th / theta)
    return 1.0 - _radial_survival(1.0 + load, b, beta, spec or _DEFAULT_SPEC)


def cdf_user_normal(gamma_th: float, params: SystemParams,
                    spec: QuadratureSpec | None = None) -> float:
    """CDF of the served user's SINR under normal transmission:
    1 - 1/(1 + Z(gamma_th)) when interference limited."""
    if gamma_th < 0:
        raise ParameterError(f"gamma_th must be >= 0, got {gamma_th}")
    if gamma_th == 0:
        return 0.0
    z = z_kernel(gamma_th, params.pathloss_beta)
    if params.interference_limited:
        return 1.0 - 1.0 / (1.0 + z)
    b = _noise_coef(params, gamma_th)
    return 1.0 - _radial_survival(1.0 + z, b, params.pathloss_beta,
                                  spec or _DEFAULT_SPEC)


def cdf_eav_secure(gamma_th: float, params: SystemParams,
                   spec: QuadratureSpec | None = None) -> float:
    """CDF of the strongest eavesdropper's SINR under secure transmission.

    Identically 1 at and above the artificial-noise ceiling
    gamma_th0 = theta/(1-theta). Below it, interference limited:

        exp{ -(lambda_e/lambda_b) / (Gc * W^{2/beta}) },
        W = gamma/(theta - (1-theta)*gamma),  Gc = Gamma(1+2/b)Gamma(1-2/b).
    """
    if gamma_th < 0:
        raise ParameterError(f"gamma_th must be >= 0, got {gamma_th}")
    if params.lambda_e == 0:
        return 1.0
    if gamma_th == 0:
        return 0.0
    theta = params.power_split
    w = _w_bracket(gamma_th, theta)
    if not math.isfinite(w):
        return 1.0
    beta = params.pathloss_beta
    gc = gamma_product(beta)
    if params.interference_limited:
        return math.exp(-params.eav_ratio / (gc * w ** (2.0 / beta)))
    b = _noise_coef(params, w)
    surv = _radial_survival(gc * w ** (2.0 / beta), b, beta, spec or _DEFAULT_SPEC)
    return math.exp(-params.eav_ratio * surv)


def cdf_eav_normal(gamma_th: float, params: SystemParams,
                   spec: QuadratureSpec | None = None) -> float:
    """CDF of the strongest eavesdropper's SINR under normal transmission:
    exp{-(lambda_e/lambda_b)/(Gc * gamma^{2/beta})} when interference limited."""
    if gamma_th < 0:
        raise ParameterError(f"gamma_th must be >= 0, got {gamma_th}")
    if params.lambda_e == 0:
        return 1.0
    if gamma_th == 0:
        return 0.0
    beta = params.pathloss_beta
    gc = gamma_product(beta)
    if params.interference_limited:
        return math.exp(-params.eav_ratio / (gc * gamma_th ** (2.0 / beta)))
    b = _noise_coef(params, gamma_th)
    surv = _radial_survival(gc * gamma_th ** (2.0 / beta), b, beta,
                            spec or _DEFAULT_SPEC)
    return math.exp(-params.eav_ratio * surv)


def _require_interference_limited(params: SystemParams, what: str) -> None:
    if not params.interference_limited:
        raise ParameterError(
            f"{what} is derived for the interference-limited regime; "
            "use the generic engine with noise-inclusive CDFs instead"
        )


def avg_secrecy_rate_secure(params: SystemParams, tiers: TierDensities,
                            spec: QuadratureSpec | None = None) -> RateResult:
    """Average secrecy rate of secure transmission, interference limited.

    Two-piece integral: on (0, gamma_th0) the eavesdropper CDF contributes
    its exponential factor; beyond the artificial-noise ceiling that factor
    is exactly 1 and only the user tail remains.
    """
    _require_interference_limited(params, "avg_secrecy_rate_secure")
    spec = spec or _DEFAULT_SPEC
    r1, r3 = _tier_fractions(params, tiers)
    beta = params.pathloss_beta
    theta = params.power_split
    gc = gamma_product(beta)
    ratio = params.eav_ratio
    th0 = SecrecyThreshold.from_power_split(theta).gamma_th0

    def user_tail(g: float) -> float:
        load = r1 * z_kernel(g, beta) + r3 * z_kernel(g / theta, beta)
        return 1.0 / ((1.0 + load) * (1.0 + g))

    def eav_factor(g: float) -> float:
        if g <= 0.0:
            return 0.0
        w = _w_bracket(g, theta)
        if not math.isfinite(w):
            return 1.0
        return math.exp(-ratio / (gc * w ** (2.0 / beta)))

    if math.isfinite(th0):
        v1, b1 = integrate_detail(lambda g: eav_factor(g) * user_tail(g), 0.0, th0, spec)
        v2, b2 = integrate_detail(user_tail, th0, math.inf, spec)
    else:
        f = lambda g: eav_factor(g) * user_tail(g)
        v1, b1 = integrate_detail(f, 0.0, 1.0, spec)
        v2, b2 = integrate_detail(f, 1.0, math.inf, spec)
    return RateResult(max(0.0, (v1 + v2) / _LN2), (b1 + b2) / _LN2)


def avg_secrecy_rate_normal(params: SystemParams,
                            spec: QuadratureSpec | None = None) -> RateResult:
    """Average secrecy rate of normal transmission, interference limited."""
    _require_interference_limited(params, "avg_secrecy_rate_normal")
    spec = spec or _DEFAULT_SPEC
    beta = params.pathloss_beta
    gc = gamma_product(beta)
    ratio = params.eav_ratio

    def f(g: float) -> float:
        if g <= 0.0:
            return 0.0
        eav = math.exp(-ratio / (gc * g ** (2.0 / beta)))
        return eav / ((1.0 + z_kernel(g, beta)) * (1.0 + g))

    v1, b1 = integrate_detail(f, 0.0, 1.0, spec)
    v2, b2 = integrate_detail(f, 1.0, math.inf, spec)
    return RateResult(max(0.0, (v1 + v2) / _LN2), (b1 + b2) / _LN2)


def avg_secrecy_rate_generic(cdf_user, cdf_eav,
                             spec: QuadratureSpec | None = None,
                             breakpoints: tuple[float, ...] = ()) -> RateResult:
    """Average secrecy rate straight from the definition,

        (1/ln 2) * integral_0^inf [1 - F_u(g)] * F_e(g) / (1+g) dg,

    for arbitrary CDF callables. Pass known kink locations (for instance
    the secure-mode ceiling gamma_th0) via breakpoints so the quadrature
    splits there.
    """
    spec = spec or _DEFAULT_SPEC

    def g(t: float) -> float:
        return (1.0 - cdf_user(t)) * cdf_eav(t) / (1.0 + t)

    edges = sorted({0.0, 1.0} | {float(b) for b in breakpoints
                                 if 0.0 < b < math.inf})
    value = bound = 0.0
    for left, right in zip(edges, edges[1:]):
        v, eb = integrate_detail(g, left, right, spec)
        value += v
        bound += eb
    v, eb = integrate_detail(g, edges[-1], math.inf, spec)
    return RateResult(max(0.0, (value + v) / _LN2), (bound + eb) / _LN2)


def _coverage_result(raw: float, bound: float) -> CoverageResult:
    if raw < -bound - 1e-9 or raw > 1.0 + bound + 1e-9:
        warnings.warn(
            f"coverage probability {raw:.6g} exits [0,1] beyond the quadrature "
            "bound; clamping",
            RuntimeWarning,
            stacklevel=3,
        )
    return CoverageResult(min(1.0, max(0.0, raw)), bound)


def coverage_secure(params: SystemParams, tiers: TierDensities, rate_rs: float,
                    spec: QuadratureSpec | None = None) -> CoverageResult:
    """Secrecy coverage probability of secure transmission, closed route.

    Evaluates the derived expression exactly as stated: the eavesdropper
    density factor

        (2 lambda_e theta / (beta lambda_b Gc)) * g^{-(beta+2)/beta} * W^{-(beta-2)/beta}

    times exp{-(lambda_e/lambda_b)/(Gc W^{2/beta})}, divided by
    G(g)*r1 + G(g/theta)*r3 + 1 with the G kernel at threshold R_s,
    integrated over (0, gamma_th0). The definition-level coverage_generic
    is the authoritative oracle; validation reports any discrepancy.
    """
    _require_interference_limited(params, "coverage_secure")
    if rate_rs < 0:
        raise ParameterError(f"rate_rs must be >= 0, got {rate_rs}")
    spec = spec or _DEFAULT_SPEC
    r1, r3 = _tier_fractions(params, tiers)
    beta = params.pathloss_beta
    theta = params.power_split
    gc = gamma_product(beta)
    ratio = params.eav_ratio
    if ratio == 0.0:
        p = 1.0 - cdf_user_secure(2.0 ** rate_rs - 1.0, params, tiers)
        return _coverage_result(p, 0.0)
    th0 = SecrecyThreshold.from_power_split(theta).gamma_th0
    pref = 2.0 * theta * ratio / (beta * gc)

    def f(g: float) -> float:
        if g <= 0.0:
            return 0.0
        w = _w_bracket(g, theta)
        if not math.isfinite(w):
            return 0.0
        expo = -ratio / (gc * w ** (2.0 / beta))
        if expo < -700.0:
            return 0.0
        user = (
            r1 * g_kernel(g, beta, rate_rs)
            + r3 * g_kernel(g / theta, beta, rate_rs)
            + 1.0
        )
        dens = pref * g ** (-(beta + 2.0) / beta) * w ** (-(beta - 2.0) / beta)
        return math.exp(expo) / user * dens

    if math.isfinite(th0):
        v, b = integrate_detail(f, 0.0, th0, spec)
    else:
        v1, b1 = integrate_detail(f, 0.0, 1.0, spec)
        v2, b2 = integrate_detail(f, 1.0, math.inf, spec)
        v, b = v1 + v2, b1 + b2
    return _coverage_result(v, b)


def coverage_normal(params: SystemParams, rate_rs: float,
                    spec: QuadratureSpec | None = None) -> CoverageResult:
    """Secrecy coverage probability of normal transmission, closed route."""
    _require_interference_limited(params, "coverage_normal")
    if rate_rs < 0:
        raise ParameterError(f"rate_rs must be >= 0, got {rate_rs}")
    spec = spec or _DEFAULT_SPEC
    beta = params.pathloss_beta
    gc = gamma_product(beta)
    ratio = params.eav_ratio
    if ratio == 0.0:
        # Degenerate eavesdropper process: coverage is the user's own
        # outage complement at the threshold SINR.
        p = 1.0 - cdf_user_normal(2.0 ** rate_rs - 1.0, params)
        return _coverage_result(p, 0.0)
    pref = 2.0 * ratio / (beta * gc)

    def f(g: float) -> float:
        if g <= 0.0:
            return 0.0
        expo = -ratio / (gc * g ** (2.0 / beta))
        if expo < -700.0:
            return 0.0
        return (
            math.exp(expo) / (g_kernel(g, beta, rate_rs) + 1.0)
            * pref * g ** (-(beta + 2.0) / beta)
        )

    v1, b1 = integrate_detail(f, 0.0, 1.0, spec)
    v2, b2 = integrate_detail(f, 1.0, math.inf, spec)
    return _coverage_result(v1 + v2, b1 + b2)


def _cdf_derivative(cdf, gamma: float, lo: float, hi: float) -> float:
    """Numerical density of a CDF on the open support (lo, hi).

    Central difference with h = max(1e-6, 1e-4*gamma), capped so the
    stencil stays inside the support; near a finite right endpoint the cap
    h <= (hi-gamma)/4 keeps the step small relative to the distance from
    the branch point, where the density may be singular. Falls back to a
    second-order one-sided difference from below when even the capped
    central stencil would cross.
    """
    h = max(1e-6, 1e-4 * gamma)
    if math.isfinite(hi):
        h = min(h, 0.25 * (hi - gamma))
    if gamma > lo:
        h = min(h, 0.5 * (gamma - lo))
    h = max(h, 1e-13)
    if gamma + h < hi and gamma - h > lo:
        return (cdf(gamma + h) - cdf(gamma - h)) / (2.0 * h)
    hb = max(1e-6, 1e-4 * gamma)
    if gamma > lo:
        hb = min(hb, 0.5 * (gamma - lo))
    hb = max(hb, 1e-13)
    return (3.0 * cdf(gamma) - 4.0 * cdf(gamma - hb) + cdf(gamma - 2.0 * hb)) / (2.0 * hb)


def coverage_generic(cdf_user, cdf_eav, rate_rs: float,
                     spec: QuadratureSpec | None = None,
                     support: tuple[float, float] = (0.0, math.inf)) -> CoverageResult:
    """Secrecy coverage straight from the definition,

        P = integral f_e(g) * [1 - F_u(2^{R_s}(1+g) - 1)] dg,

    with the eavesdropper density f_e obtained by numerically
    differentiating cdf_eav on its continuous support. Mass sitting at the
    left edge (a point mass at zero SINR, e.g. with no eavesdroppers) is
    added as an atom; for a finite right endpoint (the secure-mode ceiling
    gamma_th0) the possibly singular density is integrated under the
    substitution g = hi - u^2 and any residual jump at the endpoint is
    added as a point mass.
    """
    if rate_rs < 0:
        raise ParameterError(f"rate_rs must be >= 0, got {rate_rs}")
    spec = spec or _DIFF_SPEC
    lo, hi = support
    if not (math.isfinite(lo) and lo >= 0.0 and hi > lo):
        raise ParameterError(f"invalid support {support}")
    scale = 2.0 ** rate_rs

    def win(g: float) -> float:
        return 1.0 - cdf_user(scale * (1.0 + g) - 1.0)

    def f(g: float) -> float:
        return _cdf_derivative(cdf_eav, g, lo, hi) * win(g)

    atom = cdf_eav(lo + 1e-12) * win(lo)
    if math.isinf(hi):
        v1, b1 = integrate_detail(f, lo + 1e-12, lo + 1.0, spec)
        v2, b2 = integrate_detail(f, lo + 1.0, math.inf, spec)
        return _coverage_result(atom + v1 + v2, b1 + b2)

    mid = lo + 0.5 * (hi - lo)
    v1, b1 = integrate_detail(f, lo + 1e-12, mid, spec)
    v2, b2 = integrate_detail(lambda u: 2.0 * u * f(hi - u * u),
                   0.0, math.sqrt(hi - mid), spec)
    jump = max(0.0, 1.0 - cdf_eav(hi - 1e-9 * max(1.0, hi)))
    total = atom + v1 + v2 + jump * win(hi)
    return _coverage_result(total, b1 + b2 + jump)
