"""Physical-layer secrecy metrics of a cache-enabled heterogeneous network.

The library has two independent routes to every metric: closed-form
analytical expressions built on stochastic-geometry results (metrics),
and a first-principles Monte Carlo sampler over Poisson networks
(simulate). The cli module cross-validates one against the other.
"""

from .content import (
    ContentParams,
    PopularityProfile,
    RequestMix,
    TierDensities,
    hit_probability,
    request_mix,
    tier_densities,
    zipf_popularity,
)
from .errors import ParameterError, PathlossError, QuadratureError
from .metrics import (
    CoverageResult,
    RateResult,
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
from .simulate import (
    NORMAL_TX_CACHED,
    NORMAL_TX_UNCACHED,
    SECURE_TX,
    McConfig,
    MetricEstimate,
    NetworkRealization,
    TrialSamples,
    assign_bs_states,
    eavesdropper_disk_radius,
    estimate_coverage,
    estimate_rate,
    run_trials,
    sample_ppp,
    secrecy_rate_sample,
    sinr_eav_max_normal,
    sinr_eav_max_secure,
    sinr_user_normal,
    sinr_user_secure,
)
from .special import (
    QuadratureSpec,
    g_kernel,
    gamma_product,
    gauss_2f1,
    integrate,
    integrate_detail,
    z_kernel,
)

__version__ = "0.1.0"

__all__ = [
    "ContentParams", "PopularityProfile", "RequestMix", "TierDensities",
    "zipf_popularity", "hit_probability", "request_mix", "tier_densities",
    "ParameterError", "PathlossError", "QuadratureError",
    "SystemParams", "SecrecyThreshold", "RateResult", "CoverageResult",
    "cdf_user_secure", "cdf_user_normal", "cdf_eav_secure", "cdf_eav_normal",
    "avg_secrecy_rate_secure", "avg_secrecy_rate_normal",
    "avg_secrecy_rate_generic", "coverage_secure", "coverage_normal",
    "coverage_generic",
    "McConfig", "MetricEstimate", "NetworkRealization", "TrialSamples",
    "run_trials", "estimate_rate", "estimate_coverage", "sample_ppp",
    "eavesdropper_disk_radius", "secrecy_rate_sample",
    "sinr_user_normal", "sinr_user_secure",
    "sinr_eav_max_normal", "sinr_eav_max_secure",
    "QuadratureSpec", "gauss_2f1", "z_kernel", "gamma_product", "g_kernel",
    "integrate",
    "integrate_detail",
    "__version__",
]
