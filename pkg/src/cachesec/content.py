"""File library popularity, cache hits, and the protocol-induced BS tiers.

Users request files from a library of N files ranked by popularity. A
fraction alpha of users caches the M most popular files. A request is
served one of four ways: from the user's own cache (self-offloading), by
the nearest BS with an artificial-interference overlay when a caching
user asks for an uncached file (secure transmission), or by a plain
transmission when the user has no cache, split by whether the file
happens to be in the popular set. Base stations are always loaded, so
conditioning on the served request type thins the BS process into three
tiers whose densities sum back to lambda_b.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = [
    "ContentParams",
    "PopularityProfile",
    "RequestMix",
    "TierDensities",
    "zipf_popularity",
    "hit_probability",
    "request_mix",
    "tier_densities",
]

_SUM_TOL = 1e-12


@dataclass(frozen=True)
class ContentParams:
    """Library size, cache size, and Zipf skew.

    file_count: number of files N in the library.
    cache_size: number of most-popular files M held by caching users.
    zipf_skew: Zipf exponent eta >= 0 (0 gives a uniform library).
    """

    file_count: int = 100
    cache_size: int = 5
    zipf_skew: float = 0.8

    def __post_init__(self):
        if self.file_count < 1:
            raise ParameterError(f"file_count must be >= 1, got {self.file_count}")
        if not 0 <= self.cache_size <= self.file_count:
            raise ParameterError(
                f"cache_size must be in [0, {self.file_count}], got {self.cache_size}"
            )
        if self.zipf_skew < 0:
            raise ParameterError(f"zipf_skew must be >= 0, got {self.zipf_skew}")


@dataclass(frozen=True)
class PopularityProfile:
    """Normalized, nonincreasing request probabilities over the ranked library."""

    probabilities: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        object.__setattr__(self, "probabilities", p)
        if p.ndim != 1 or p.size < 1:
            raise ParameterError("probabilities must be a nonempty 1-d vector")
        if np.any(p <= 0):
            raise ParameterError("all request probabilities must be positive")
        if np.any(np.diff(p) > _SUM_TOL):
            raise ParameterError("request probabilities must be nonincreasing in rank")
        if abs(float(p.sum()) - 1.0) > _SUM_TOL:
            raise ParameterError("request probabilities must sum to 1")


@dataclass(frozen=True)
class RequestMix:
    """Fractions of requests by service type; sums to 1."""

    self_offload: float
    secure_tx: float
    normal_tx_cached: float
    normal_tx_uncached: float

    def __post_init__(self):
        parts = (
            self.self_offload,
            self.secure_tx,
            self.normal_tx_cached,
            self.normal_tx_uncached,
        )
        if any(not 0 <= x <= 1 for x in parts):
            raise ParameterError(f"request fractions must lie in [0,1], got {parts}")
        if abs(sum(parts) - 1.0) > _SUM_TOL:
            raise ParameterError(f"request fractions must sum to 1, got {sum(parts)}")


@dataclass(frozen=True)
class TierDensities:
    """Densities of the three transmitting BS tiers, per km^2.

    lambda_b1 carries secure transmissions, lambda_b2 plain transmissions
    of cached files (fully cancellable at caching users), lambda_b3 plain
    transmissions of uncached files. The three sum to the full BS density.
    """

    lambda_b1: float
    lambda_b2: float
    lambda_b3: float

    def __post_init__(self):
        for name in ("lambda_b1", "lambda_b2", "lambda_b3"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0")

    @property
    def lambda_b(self) -> float:
        return self.lambda_b1 + self.lambda_b2 + self.lambda_b3

    def fractions(self) -> tuple[float, float, float]:
        """Tier fractions (lambda_bi / lambda_b)."""
        total = self.lambda_b
        if total <= 0:
            raise ParameterError("tier densities are all zero; fractions undefined")
        return self.lambda_b1 / total, self.lambda_b2 / total, self.lambda_b3 / total


def zipf_popularity(params: ContentParams) -> PopularityProfile:
    """Zipf profile: p_i proportional to i^(-eta), i = 1..N."""
    ranks = np.arange(1, params.file_count + 1, dtype=float)
    weights = ranks ** (-params.zipf_skew)
    return PopularityProfile(weights / weights.sum())


def hit_probability(profile: PopularityProfile, cache_size: int) -> float:
    """Cache hit probability delta: total mass of the cache_size most popular files."""
    n = profile.probabilities.size
    if not 0 <= cache_size <= n:
        raise ParameterError(f"cache_size must be in [0, {n}], got {cache_size}")
    if cache_size == n:
        return 1.0
    return float(profile.probabilities[:cache_size].sum())


def request_mix(alpha: float, delta: float) -> RequestMix:
    """Split request mass by (caching user?) x (file cached?).

    alpha is the fraction of users with a cache, delta the cache hit
    probability.
    """
    if not 0 <= alpha <= 1:
        raise ParameterError(f"alpha must be in [0,1], got {alpha}")
    if not 0 <= delta <= 1:
        raise ParameterError(f"delta must be in [0,1], got {delta}")
    return RequestMix(
        self_offload=alpha * delta,
        secure_tx=alpha * (1 - delta),
        normal_tx_cached=(1 - alpha) * delta,
        normal_tx_uncached=(1 - alpha) * (1 - delta),
    )


def tier_densities(lambda_b: float, alpha: float, delta: float) -> TierDensities:
    """Thin the BS process by served-request type.

    Self-offloaded requests never occupy a BS, so the three transmitting
    tiers renormalize over the remaining request mass 1 - alpha*delta:

        lambda_b1 = alpha(1-delta)/(1-alpha*delta) * lambda_b
        lambda_b2 = (1-alpha)delta/(1-alpha*delta) * lambda_b
        lambda_b3 = (1-alpha)(1-delta)/(1-alpha*delta) * lambda_b
    """
    if lambda_b <= 0:
        raise ParameterError(f"lambda_b must be > 0, got {lambda_b}")
    mix = request_mix(alpha, delta)
    served = 1.0 - mix.self_offload
    if served <= 0:
        raise ParameterError(
            "alpha*delta = 1: every request self-offloads and no BS transmits"
        )
    return TierDensities(
        lambda_b1=lambda_b * mix.secure_tx / served,
        lambda_b2=lambda_b * mix.normal_tx_cached / served,
        lambda_b3=lambda_b * mix.normal_tx_uncached / served,
    )
