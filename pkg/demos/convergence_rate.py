"""
The 1/n rate in degree two
==========================

For x^2 - 2x + 1/2 the powers are x^2 - 2x + 2^-n with roots
1 +- sqrt(1 - 2^-n).  The scaled log errors n (log lambda^(1/n) - log R)
settle at +log 2 and -log 2, so the 1/n rate cannot be improved.
"""

import math

import mpmath

from freelln import laguerre_profile
from freelln.experiments import converge_study, rate_d2_study

print(" n   n*err_1          n*err_2")
for row in rate_d2_study(schedule=[1, 2, 4, 16, 64, 256, 1024]):
    # rate_d2_study reports log lambda_1 and log lambda_2 + n log 2
    print(f"{row['n']:5d}  {mpmath.nstr(row['n_log_error_1'], 10):>14} "
          f"{mpmath.nstr(row['n_log_error_2'], 10):>14}")
print("log 2 =", math.log(2))

# in degree three the scaled errors stay below log C(3, i)
rows = converge_study(laguerre_profile(3), (4, 16, 64, 256))
for r in rows:
    print(r["n"], r["i"], mpmath.nstr(r["n_log_error"], 8), r["in_bracket"])
