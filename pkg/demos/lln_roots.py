"""
Limit roots of high powers
==========================

The n-th roots of the roots of the n-fold power converge to ratios of
consecutive e~ values.  Here we compute them exactly and then watch the
certified solver approach them.
"""

import mpmath

from freelln import (
    RootMultiset,
    laguerre_profile,
    lln_limit_polynomial,
    lln_limit_roots,
    nth_root_of_roots,
    power_roots,
    profile_from_roots,
    two_root_profile,
)

# rescaled Laguerre: limits (d - i + 1) / d
print([str(r) for r in lln_limit_roots(laguerre_profile(5)).values])

# x^3 (x - 1)^3: limits (d - i + 1) / (2d - i + 1), then three zeros
print([str(r) for r in lln_limit_roots(two_root_profile(3)).values])

# a generic seed; R_1 is the mean and R_d the harmonic mean of the roots
P = profile_from_roots(RootMultiset.of(1, 2, 3))
R = lln_limit_roots(P)
print("limits:", [str(r) for r in R.values])
print("limit polynomial:", [str(c) for c in lln_limit_polynomial(P).coeffs])

for n in (1, 4, 16, 64, 256):
    res = power_roots(P, n)
    roots = nth_root_of_roots(res.roots, n)
    print(n, [mpmath.nstr(r, 12) for r in roots.roots])
