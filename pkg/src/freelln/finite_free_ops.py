"""Finite free convolutions, powers, and law-of-large-numbers limit roots."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath

from .errors import DegreeMismatchError, InputValidationError
from .symmetric_core import (
    NEG_INF,
    BigPoly,
    RootMultiset,
    SymmetricProfile,
    expand_roots,
    to_mpf,
)

__all__ = [
    "LimitRoots",
    "multiplicative_convolve",
    "multiplicative_power",
    "additive_convolve",
    "additive_convolve_profiles",
    "lln_limit_roots",
    "lln_limit_polynomial",
    "laguerre_profile",
    "two_root_profile",
]


@dataclass(frozen=True)
class LimitRoots:
    """Limits ``R_1 >= ... >= R_{d-k} > 0`` followed by ``k`` zeros."""

    degree: int
    zero_count: int
    values: tuple
    log_values: tuple
    exact: bool

    @property
    def positive(self) -> tuple:
        return self.values[: self.degree - self.zero_count]

    def as_multiset(self) -> RootMultiset:
        return RootMultiset(self.values)


def _check_degrees(a, b):
    if a.degree != b.degree:
        raise DegreeMismatchError(f"degrees differ: {a.degree} != {b.degree}")


def multiplicative_convolve(P: SymmetricProfile, Q: SymmetricProfile) -> SymmetricProfile:
    """Finite free multiplicative convolution, a pointwise product of profiles."""
    _check_degrees(P, Q)
    if P.exact and Q.exact:
        return SymmetricProfile.from_exact(
            [a * b for a, b in zip(P.e_tilde_exact, Q.e_tilde_exact)], max(P.prec, Q.prec))
    prec = max(P.prec, Q.prec)
    with mpmath.workprec(prec):
        logs = [a + b for a, b in zip(P.log_e_tilde, Q.log_e_tilde)]
    return SymmetricProfile(P.degree, max(P.zero_count, Q.zero_count), tuple(logs), None, prec)


def multiplicative_power(P: SymmetricProfile, n: int, exact: bool = False) -> SymmetricProfile:
    """``n``-fold finite free multiplicative power: ``e~_i -> e~_i**n``.

    The log-domain result is always filled (``n * log e~_i``).  Exact
    rationals are carried along only when ``exact=True``, since they grow
    linearly in ``n``.
    """
    if n < 1 or int(n) != n:
        raise InputValidationError("n must be a positive integer")
    n = int(n)
    with mpmath.workprec(P.prec):
        logs = tuple(v if v == NEG_INF else n * v for v in P.log_e_tilde)
    ex = None
    if exact:
        if not P.exact:
            raise InputValidationError("exact power requested for a log-domain profile")
        ex = tuple(v ** n for v in P.e_tilde_exact)
    return SymmetricProfile(P.degree, P.zero_count, logs, ex, P.prec)


def additive_convolve(p: BigPoly, q: BigPoly) -> BigPoly:
    """Finite free additive convolution on monic coefficient vectors.

    With ``p(x) = sum (-1)**i p_i x**(d-i)``, the coefficient of
    ``x**(d-i-j)`` accumulates
    ``(-1)**(i+j) (d-i)!(d-j)! / ((d-i-j)! d!) p_i q_j``.
    """
    _check_degrees(p, q)
    d = p.degree
    pa = [(-1) ** i * c for i, c in enumerate(p.coeffs)]
    qa = [(-1) ** j * c for j, c in enumerate(q.coeffs)]
    exact = p.exact and q.exact
    prec = max(p.prec or 0, q.prec or 0) or None
    out = [Fraction(0)] * (d + 1)
    with mpmath.workprec(prec or 53):
        for i in range(d + 1):
            for j in range(d + 1 - i):
                w = Fraction(factorial(d - i) * factorial(d - j),
                             factorial(d - i - j) * factorial(d))
                if not exact:
                    w = to_mpf(w, prec)
                out[i + j] += (-1) ** (i + j) * w * pa[i] * qa[j]
    return BigPoly(tuple(out), None if exact else prec)


def additive_convolve_profiles(P: SymmetricProfile, Q: SymmetricProfile) -> tuple:
    """Normalized form of the additive convolution.

    Returns ``e~_k = sum_{i+j=k} C(k, i) e~_i(P) e~_j(Q)`` (exact values).  The
    result may have negative entries, so it is returned as a plain tuple
    rather than as a profile.
    """
    _check_degrees(P, Q)
    if not (P.exact and Q.exact):
        raise InputValidationError("normalized additive form needs exact profiles")
    a, b = P.e_tilde_exact, Q.e_tilde_exact
    return tuple(sum(comb(k, i) * a[i] * b[k - i] for i in range(k + 1))
                 for k in range(P.degree + 1))


def lln_limit_roots(P: SymmetricProfile) -> LimitRoots:
    """Limit roots ``R_i = e~_i / e~_{i-1}`` for ``i <= d - k``, zeros after."""
    d, k = P.degree, P.zero_count
    with mpmath.workprec(P.prec):
        logs = [P.log_e_tilde[i] - P.log_e_tilde[i - 1] for i in range(1, d - k + 1)]
        logs += [NEG_INF] * k
        if P.exact:
            e = P.e_tilde_exact
            values = [e[i] / e[i - 1] for i in range(1, d - k + 1)] + [Fraction(0)] * k
        else:
            values = [mpmath.exp(v) for v in logs[: d - k]] + [mpmath.mpf(0)] * k
    return LimitRoots(d, k, tuple(values), tuple(logs), P.exact)


def lln_limit_polynomial(P: SymmetricProfile) -> BigPoly:
    """Expanded ``x**k * prod_{i <= d-k} (x - R_i)``."""
    R = lln_limit_roots(P)
    return expand_roots(RootMultiset(R.values), None if R.exact else P.prec)


def laguerre_profile(d: int) -> SymmetricProfile:
    """Profile of the rescaled Laguerre polynomial ``d! (-d)**(-d) L_d(d x)``.

    ``e~_j = (d/d)((d-1)/d)...((d-j+1)/d)``; no zero roots.
    """
    if d < 1:
        raise InputValidationError("d must be >= 1")
    e = [Fraction(1)]
    for j in range(1, d + 1):
        e.append(e[-1] * Fraction(d - j + 1, d))
    return SymmetricProfile.from_exact(e)


def two_root_profile(d: int) -> SymmetricProfile:
    """Profile of ``x**d (x - 1)**d`` (degree ``2d``): ``e~_j = C(d, j) / C(2d, j)``."""
    if d < 1:
        raise InputValidationError("d must be >= 1")
    return SymmetricProfile.from_exact(
        [Fraction(comb(d, j), comb(2 * d, j)) if j <= d else Fraction(0)
         for j in range(2 * d + 1)])
