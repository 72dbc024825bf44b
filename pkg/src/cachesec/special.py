"""Special functions and quadrature behind the analytical metrics.

The interference kernels reduce to the Gauss hypergeometric function on
nonpositive arguments. beta = 4 admits arctan closed forms, kept as fast
paths; the generic path covers beta in (2, 4].
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.special

from .errors import ParameterError, PathlossError, QuadratureError

__all__ = [
    "QuadratureSpec",
    "gauss_2f1",
    "z_kernel",
    "gamma_product",
    "g_kernel",
    "integrate",
    "integrate_detail",
]

_BETA_MIN = 2.0 + 1e-9


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and limits for the adaptive integrator.

    tail_cutoff_rel: relative integrand magnitude below which a
    semi-infinite tail is truncated (then extended until stable).
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2000
    tail_cutoff_rel: float = 1e-10

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0 or self.tail_cutoff_rel <= 0:
            raise ParameterError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ParameterError("max_subdivisions must be >= 1")


def _check_beta(beta: float) -> None:
    if not beta > _BETA_MIN:
        raise PathlossError(
            f"pathloss exponent beta={beta} too close to 2; kernels diverge"
        )
    if beta > 4.0:
        raise PathlossError(f"pathloss exponent beta={beta} outside supported (2, 4]")


def gauss_2f1(a: float, b: float, c: float, z: float) -> float:
    """Gauss hypergeometric 2F1(a, b; c; z) for z <= 0.

    Relative accuracy around 1e-10 or better over the argument range the
    kernels use (z down to about -1e8).
    """
    if z > 0:
        raise ParameterError(f"gauss_2f1 requires z <= 0, got {z}")
    if c <= 0 and float(c).is_integer():
        raise ParameterError(f"c={c} is a nonpositive integer; 2F1 undefined")
    value = float(scipy.special.hyp2f1(a, b, c, z))
    if not math.isfinite(value):
        raise QuadratureError(
            f"2F1({a},{b};{c};{z}) did not evaluate to a finite value",
            estimate=value,
            error_bound=math.inf,
        )
    return value


def z_kernel(gamma_th: float, beta: float) -> float:
    """Interference kernel Z(gamma_th) = (2 gamma/(beta-2)) 2F1(1, 1-2/beta; 2-2/beta; -gamma).

    Equals gamma^{2/beta} * integral_{gamma^{-2/beta}}^{inf} dy/(1+y^{beta/2}),
    the exclusion-zone Laplace-functional integral for the nearest-server
    geometry. Strictly increasing, Z(0) = 0.
    """
    _check_beta(beta)
    if gamma_th < 0:
        raise ParameterError(f"gamma_th must be >= 0, got {gamma_th}")
    if gamma_th == 0:
        return 0.0
    if beta == 4.0:
        r = math.sqrt(gamma_th)
        return r * math.atan(r)
    if gamma_th >= 1e8:
        # Large-argument expansion of the integral form keeps the 2F1 call
        # inside its validated range; the dropped term is O(u^{beta+2 over 2}).
        u = gamma_th ** (-2.0 / beta)
        tail = gamma_product(beta) - u + u ** (1.0 + beta / 2.0) / (1.0 + beta / 2.0)
        return gamma_th ** (2.0 / beta) * tail
    return (
        2.0 * gamma_th / (beta - 2.0)
        * gauss_2f1(1.0, 1.0 - 2.0 / beta, 2.0 - 2.0 / beta, -gamma_th)
    )


def gamma_product(beta: float) -> float:
    """The constant Gamma(1 + 2/beta) * Gamma(1 - 2/beta).

    By the reflection formula this is pi*(2/beta)/sin(2*pi/beta); it
    diverges as beta -> 2, hence the domain cut.
    """
    _check_beta(beta)
    x = 2.0 / beta
    if x == 0.5:
        return math.pi / 2.0
    return math.pi * x / math.sin(math.pi * x)


def g_kernel(gamma_th: float, beta: float, rate_rs: float) -> float:
    """Coverage kernel G: with s = (1+gamma_th)*2^{R_s} - 1,

        G = s^{2/beta} * integral_{s^{2/beta}}^{inf} dx / (1 + x^{beta/2}).

    Evaluated exactly as written (note the positive exponent on the lower
    limit). Closed form via 2F1: (2/(beta-2)) * s^{4/beta-1} * 2F1(1, 1-2/beta;
    2-2/beta; -1/s); for beta = 4 this is sqrt(s)*(pi/2 - arctan(sqrt(s))).
    """
    _check_beta(beta)
    if gamma_th < 0:
        raise ParameterError(f"gamma_th must be >= 0, got {gamma_th}")
    if rate_rs < 0:
        raise ParameterError(f"rate_rs must be >= 0, got {rate_rs}")
    s = (1.0 + gamma_th) * 2.0 ** rate_rs - 1.0
    if s <= 0.0:
        return 0.0
    if beta == 4.0:
        r = math.sqrt(s)
        return r * (math.pi / 2.0 - math.atan(r))
    if s < 1e-8:
        # integral_0^inf dx/(1+x^{beta/2}) = gamma_product(beta); subtract the
        # head, which is u + O(u^{1+beta/2}) for small u.
        u = s ** (2.0 / beta)
        return u * (gamma_product(beta) - u)
    return (
        2.0 / (beta - 2.0)
        * s ** (4.0 / beta - 1.0)
        * gauss_2f1(1.0, 1.0 - 2.0 / beta, 2.0 - 2.0 / beta, -1.0 / s)
    )


def _quad(f, a: float, b: float, spec: QuadratureSpec) -> tuple[float, float]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.integrate.IntegrationWarning)
        out = scipy.integrate.quad(
            f,
            a,
            b,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
            full_output=1,
        )
    value, bound = float(out[0]), float(out[1])
    if len(out) > 3:
        raise QuadratureError(
            f"quadrature on [{a}, {b}] did not converge: {out[3]}",
            estimate=value,
            error_bound=bound,
        )
    return value, bound


def _find_tail_cut(f, a: float, cutoff_rel: float) -> float:
    offsets = np.logspace(-9.0, 14.0, 116)
    running_max = 0.0
    for off in offsets:
        x = a + off
        fx = abs(float(f(x)))
        running_max = max(running_max, fx)
        if running_max > 0.0 and fx <= cutoff_rel * running_max:
            return x
    if running_max == 0.0:
        # Zero at every probe: treat the tail as null rather than failing.
        # Deciding this only after the full scan matters when the integrand
        # underflows near the origin but carries mass far out.
        return a + 1.0
    raise QuadratureError(
        "integrand has not decayed below the tail cutoff by a + 1e14",
        estimate=math.nan,
        error_bound=math.inf,
    )


def integrate_detail(f, a: float, b: float, spec: QuadratureSpec) -> tuple[float, float]:
    """Like integrate() but returns (value, error_bound)."""
    if not math.isfinite(a):
        raise ParameterError("lower limit must be finite")
    if math.isfinite(b):
        if b <= a:
            raise ParameterError(f"need a < b, got [{a}, {b}]")
        return _quad(f, a, b, spec)

    # Semi-infinite range: truncate where the integrand has decayed, then
    # keep doubling the truncation point until the added mass is negligible.
    # The finite part is integrated over geometrically growing segments; a
    # single quadrature call spanning many decades of a slowly decaying
    # integrand makes the adaptive subdivision give up.
    cut = _find_tail_cut(f, a, spec.tail_cutoff_rel)
    value, bound = 0.0, 0.0
    lo = a
    hi = a + 1.0
    while hi < cut:
        piece, piece_bound = _quad(f, lo, hi, spec)
        value += piece
        bound += piece_bound
        lo, hi = hi, 2.0 * hi
    piece, piece_bound = _quad(f, lo, cut, spec)
    value += piece
    bound += piece_bound
    for _ in range(64):
        piece, piece_bound = _quad(f, cut, 2.0 * cut, spec)
        value += piece
        bound += piece_bound
        cut *= 2.0
        if abs(piece) <= max(spec.abs_tol, spec.rel_tol * abs(value)):
            # The last shell also bounds the remaining tail for any integrand
            # decaying at least as fast as 1/x^2 out here.
            return value, bound + abs(piece)
    raise QuadratureError(
        "semi-infinite tail failed to stabilize after 64 doublings",
        estimate=value,
        error_bound=bound,
    )


def integrate(f, a: float, b: float, spec: QuadratureSpec) -> float:
    """Adaptive quadrature of f over (a, b); b may be +inf."""
    return integrate_detail(f, a, b, spec)[0]
