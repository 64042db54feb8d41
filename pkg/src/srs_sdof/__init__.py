"""Secure rate-splitting for the two-user MIMO broadcast channel with
imperfect CSIT and a cooperative jammer.

Precoder construction, finite-SNR rate and leakage proxies, Monte Carlo
sum-SDoF slope estimation and the closed-form SDoF expressions.
"""

from .channel import (
    ChannelRealization,
    CsitView,
    ScenarioConfig,
    perfect_csit,
    sample_realization,
    split_csit,
)
from .estimator import SdofEstimate, SdofEstimator, estimate_sdof, sweep
from .formulas import (
    corollary2,
    optimality_gap,
    theorem1,
    upper_bound_region,
    upper_bound_sum,
    zf_bound,
)
from .precoders import InfeasibleDesignError, PrecoderSet, design_srs, verify
from .rates import RateBreakdown, load_powers, rate_breakdown, receive_model
from .zf import design_zf

__version__ = "0.1.0"

__all__ = [
    "ChannelRealization",
    "CsitView",
    "InfeasibleDesignError",
    "PrecoderSet",
    "RateBreakdown",
    "ScenarioConfig",
    "SdofEstimate",
    "SdofEstimator",
    "corollary2",
    "design_srs",
    "design_zf",
    "estimate_sdof",
    "load_powers",
    "optimality_gap",
    "perfect_csit",
    "rate_breakdown",
    "receive_model",
    "sample_realization",
    "split_csit",
    "sweep",
    "theorem1",
    "upper_bound_region",
    "upper_bound_sum",
    "verify",
    "zf_bound",
]
