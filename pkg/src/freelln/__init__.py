"""Finite free multiplicative convolution of non-negative-rooted polynomials,
the law of large numbers for the roots of its powers, and the comparison of
limit-root distributions with the free multiplicative limit measure.
"""

from .empirical_measures import (
    EmpiricalMeasure,
    discretize_measure,
    ks_distance,
    log_moment,
    mean_and_harmonic,
)
from .errors import (
    DegreeMismatchError,
    FreeLLNError,
    InputValidationError,
    PrecisionBudgetExceeded,
    SignPatternError,
)
from .finite_free_ops import (
    LimitRoots,
    additive_convolve,
    additive_convolve_profiles,
    laguerre_profile,
    lln_limit_polynomial,
    lln_limit_roots,
    multiplicative_convolve,
    multiplicative_power,
    two_root_profile,
)
from .free_limit_oracle import (
    BernoulliHalf,
    Discrete,
    MarchenkoPastur,
    MeasureSpec,
    PhiQuantileFn,
    Uniform,
    phi_quantile,
    psi_transform,
    s_transform,
    support_endpoints,
)
from .real_rooted_solver import (
    CertifiedRoot,
    RootBracket,
    nth_root_of_roots,
    power_roots,
    roots_of_power,
    sturm_count,
    theorem_brackets,
)
from .symmetric_core import (
    BigPoly,
    RootMultiset,
    SymmetricProfile,
    coefficients_to_profile,
    elementary_symmetric,
    profile_from_roots,
    profile_to_coefficients,
    root_power_map,
)

__version__ = "0.1.0"
