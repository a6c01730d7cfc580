"""
The limit measure through the S-transform
=========================================

Quantiles of the limit measure are 1 / S(t - 1).  For Marchenko-Pastur the
numeric S-transform (quadrature of psi, then root finding) reproduces the
uniform distribution; for the half Bernoulli measure it matches
S(t) = (2 + 2t) / (1 + 2t).
"""

import numpy as np

from freelln import BernoulliHalf, Discrete, MarchenkoPastur, phi_quantile, s_transform
from freelln import support_endpoints

MP, BH = MarchenkoPastur(), BernoulliHalf()

ts = np.linspace(0.05, 0.95, 7)
print("MP quantiles (numeric):", [round(phi_quantile(MP, t, "numeric"), 12) for t in ts])

ws = np.linspace(-0.45, -0.05, 5)
print("Bernoulli S numeric:", [round(s_transform(BH, w, "numeric"), 10) for w in ws])
print("Bernoulli S closed: ", [round(float((2 + 2 * w) / (1 + 2 * w)), 10) for w in ws])

# a two-atom measure: the support runs from the harmonic mean to the mean
mu = Discrete(((1, "1/2"), (3, "1/2")))
print("support:", support_endpoints(mu))
print("quantiles:", [round(phi_quantile(mu, t), 6) for t in (1e-6, 0.25, 0.5, 0.75, 1 - 1e-6)])
