"""
Empirical limit-root distributions against the limit measure
============================================================

Discretize a measure at midpoint quantiles, take the limit roots of the
resulting polynomial, and compare their distribution with the limit
measure.  The KS column is what one watches shrink as d grows; nothing
here proves that it must.
"""

import mpmath

from freelln import Discrete, MarchenkoPastur
from freelln.experiments import conjecture_study


def show(title, rows):
    print(title)
    print("    d    KS          |R_1 - mean|")
    for r in rows:
        print(f"{r['d']:5d}  {r['ks']:.6f}    {mpmath.nstr(r['r1_error'], 6)}")


show("Laguerre family", conjecture_study("laguerre", (10, 50, 200)))
show("two-root family", conjecture_study("two_root", (10, 50, 200)))
show("Marchenko-Pastur, discretized", conjecture_study(MarchenkoPastur(), (10, 50, 200)))
show("atoms {1, 3}", conjecture_study(Discrete(((1, "1/2"), (3, "1/2"))), (10, 50, 200)))
