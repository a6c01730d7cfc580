"""
Exact powers under the multiplicative convolution
==================================================

In normalized coordinates e~_i = e_i / C(d, i) the convolution is a
pointwise product, so the n-fold power just raises every entry to the n.
"""

from freelln import (
    RootMultiset,
    laguerre_profile,
    multiplicative_convolve,
    multiplicative_power,
    profile_from_roots,
    profile_to_coefficients,
)

# roots {1, 2, 3}: e = (1, 6, 11, 6) and e~ = (1, 2, 11/3, 6)
P = profile_from_roots(RootMultiset.of(1, 2, 3))
print("e~ of {1,2,3}:", [str(v) for v in P.e_tilde_exact])

# convolving with itself squares each entry
PP = multiplicative_convolve(P, P)
print("e~ of the square:", [str(v) for v in PP.e_tilde_exact])
print("coefficients:", [str(c) for c in profile_to_coefficients(PP).coeffs])

# (x - 1)^d is the unit
unit = profile_from_roots(RootMultiset((1, 1, 1)))
assert multiplicative_convolve(P, unit) == P

# x^2 - 2x + 1/2 to the n gives x^2 - 2x + 2^-n
seed = laguerre_profile(2)
for n in (1, 2, 7, 30):
    poly = profile_to_coefficients(multiplicative_power(seed, n, exact=True))
    print(n, [str(c) for c in poly.coeffs])

# for large n only the log-domain profile is kept
big = multiplicative_power(seed, 10**6)
print("log e~_2 at n = 10^6:", big.log_e_tilde[2])
