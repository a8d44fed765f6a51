"""Truncated power-moment problem on [0,1].

Canonical moments, Hankel determinants, extremal (principal)
representations, exact uniform sampling of the moment body, and the
attached large/moderate-deviation rate functions.
"""

from momentbody._core import (  # noqa: F401
    MomentBodyError,
    arcsine_cdf,
    arcsine_moment,
    arcsine_moment_exact,
    beta_sample,
    binomial,
    canonical_to_moments,
    canonical_to_moments_exact,
    classify,
    dual_hk,
    hankel,
    integrate_nu,
    log_beta_sf,
    md_sigma,
    moment_range,
    moments_to_canonical,
    moments_to_canonical_exact,
    nu_quadrature,
    polynomial_case_range,
    principal_representation,
    range_size,
    range_width_product,
    rate_i1,
    rate_ik,
    rate_jk,
    regularized_incomplete_beta,
    reversed_kullback,
    sample_batch,
    sample_uniform_moment_body,
    tilt_limit,
)
from momentbody._core import __version__  # noqa: F401
