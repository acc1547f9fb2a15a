"""Excited random walks in cookie environments."""

from ._core import (
    CookieEnvironment,
    CoupledResult,
    CrossingTail,
    EstimateCI,
    FirstPassageDistribution,
    GapDistribution,
    RenewalLayout,
    Side,
    binomial_floor_check,
    bm_two_sided_tail,
    coupled_run,
    derive_seed,
    derived_constants,
    dp_first_passage_reflected,
    estimate_crossing_tail,
    first_passage,
    gamma_of_epsilon,
    normal_cdf,
    renewal_counts,
    speed_estimate,
    tk_over_k_profile,
    walk,
    wilson_interval,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
