"""Root multisets, normalized elementary symmetric profiles and coefficients.

A monic polynomial with non-negative roots ``lambda_1 >= ... >= lambda_d``
is stored canonically through its normalized elementary symmetric values

    e~_i = e_i(roots) / C(d, i),   i = 0..d,

kept both as exact rationals (when the roots are rational) and as
big-float logarithms, ``-inf`` marking a structural zero.  In this chart the
coefficient of ``x**(d-i)`` is ``(-1)**i * C(d, i) * e~_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

from .errors import InputValidationError, PrecisionBudgetExceeded, SignPatternError

DEFAULT_PREC = 128
NEG_INF = mpmath.mpf("-inf")

__all__ = [
    "DEFAULT_PREC",
    "NEG_INF",
    "RootMultiset",
    "SymmetricProfile",
    "BigPoly",
    "to_scalar",
    "to_mpf",
    "is_exact",
    "elementary_symmetric",
    "profile_from_roots",
    "profile_to_coefficients",
    "coefficients_to_profile",
    "root_power_map",
    "expand_roots",
]


# ---------------------------------------------------------------------------
# scalar helpers
# ---------------------------------------------------------------------------

def is_exact(x) -> bool:
    return isinstance(x, Rational)


def to_scalar(x):
    """Coerce user input to ``Fraction`` (exact) or ``mpf`` (big-float).

    Integers, fractions and strings such as ``"3/2"`` or ``"0.25"`` become
    exact; Python floats and mpmath numbers stay inexact.
    """
    if isinstance(x, bool):
        raise InputValidationError("booleans are not scalars")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise InputValidationError(f"cannot parse scalar {x!r}") from exc
    if isinstance(x, mpmath.mpf):
        return x
    if isinstance(x, float):
        # a double is exactly representable at 53 bits
        with mpmath.workprec(53):
            return mpmath.mpf(x)
    raise InputValidationError(f"unsupported scalar type {type(x).__name__}")


def to_mpf(x, prec: int = DEFAULT_PREC):
    """Big-float value of an exact or inexact scalar at ``prec`` bits."""
    with mpmath.workprec(prec):
        if isinstance(x, Rational):
            x = Fraction(x)
            return mpmath.mpf(x.numerator) / x.denominator
        return +mpmath.mpf(x)


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of a finite binary big-float."""
    if not isinstance(x, mpmath.mpf):
        x = to_scalar(x)
        if is_exact(x):
            return x
    if not mpmath.isfinite(x):
        raise InputValidationError("cannot convert a non-finite value to a fraction")
    man, exp = x.man_exp
    man = int(man)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


def _log(x, prec: int):
    with mpmath.workprec(prec):
        if x == 0:
            return NEG_INF
        return mpmath.log(to_mpf(x, prec))


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootMultiset:
    """Sorted (descending) multiset of non-negative roots."""

    roots: tuple

    def __post_init__(self):
        values = [to_scalar(r) for r in self.roots]
        if not values:
            raise InputValidationError("a root multiset needs at least one root")
        if any(v < 0 for v in values):
            raise InputValidationError("roots must be non-negative")
        if not all(is_exact(v) for v in values):
            values = [v if isinstance(v, mpmath.mpf) else to_mpf(v) for v in values]
        # sorted() is stable, so equal roots keep their input order
        object.__setattr__(self, "roots", tuple(sorted(values, reverse=True)))

    @classmethod
    def of(cls, *roots) -> "RootMultiset":
        return cls(tuple(roots))

    @property
    def degree(self) -> int:
        return len(self.roots)

    @property
    def exact(self) -> bool:
        return all(is_exact(r) for r in self.roots)

    @property
    def zero_count(self) -> int:
        return sum(1 for r in self.roots if r == 0)

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


@dataclass(frozen=True)
class SymmetricProfile:
    """Normalized elementary symmetric values of a non-negative-rooted polynomial.

    Parameters
    ----------
    degree : int
    zero_count : int
        Number of zero roots ``k``; ``e~_i > 0`` exactly for ``i <= degree - k``.
    log_e_tilde : tuple of mpf
        ``log e~_i`` with ``-inf`` for structural zeros.
    e_tilde_exact : tuple of Fraction, optional
        Exact values, present when the profile was built from exact data.
    prec : int
        Bit precision of ``log_e_tilde``.
    """

    degree: int
    zero_count: int
    log_e_tilde: tuple
    e_tilde_exact: tuple | None = None
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        d, k = self.degree, self.zero_count
        if d < 1:
            raise InputValidationError("degree must be >= 1")
        if not 0 <= k <= d:
            raise InputValidationError("zero_count must lie in [0, degree]")
        if len(self.log_e_tilde) != d + 1:
            raise InputValidationError("log_e_tilde must have degree + 1 entries")
        if self.log_e_tilde[0] != 0:
            raise InputValidationError("e~_0 must equal 1")
        for i, v in enumerate(self.log_e_tilde):
            if (i <= d - k) != (v != NEG_INF):
                raise InputValidationError(
                    f"zero pattern violated at index {i}: positive values must "
                    f"stop exactly at index d - k = {d - k}")
        if self.e_tilde_exact is not None:
            exact = tuple(Fraction(v) for v in self.e_tilde_exact)
            if len(exact) != d + 1 or exact[0] != 1:
                raise InputValidationError("e_tilde_exact must have d + 1 entries, e~_0 = 1")
            for i, v in enumerate(exact):
                if (i <= d - k) != (v > 0) or v < 0:
                    raise InputValidationError(f"exact zero pattern violated at index {i}")
            object.__setattr__(self, "e_tilde_exact", exact)

    # construction -----------------------------------------------------------

    @classmethod
    def from_exact(cls, e_tilde: Sequence, prec: int = DEFAULT_PREC) -> "SymmetricProfile":
        values = [Fraction(to_scalar(v)) for v in e_tilde]
        if any(v < 0 for v in values):
            raise SignPatternError("normalized symmetric values must be non-negative")
        d = len(values) - 1
        positive = [i for i, v in enumerate(values) if v > 0]
        k = d - (positive[-1] if positive else 0)
        logs = tuple(_log(v, prec) for v in values)
        return cls(d, k, logs, tuple(values), prec)

    @classmethod
    def from_log(cls, log_e_tilde: Sequence, prec: int = DEFAULT_PREC) -> "SymmetricProfile":
        with mpmath.workprec(prec):
            logs = tuple(mpmath.mpf(v) for v in log_e_tilde)
        d = len(logs) - 1
        finite = [i for i, v in enumerate(logs) if v != NEG_INF]
        k = d - (finite[-1] if finite else 0)
        return cls(d, k, logs, None, prec)

    # views ------------------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.e_tilde_exact is not None

    @property
    def positive_count(self) -> int:
        return self.degree - self.zero_count

    def e_tilde(self):
        """Exact values when available, else big-floats ``exp(log e~_i)``."""
        if self.exact:
            return self.e_tilde_exact
        with mpmath.workprec(self.prec):
            return tuple(mpmath.mpf(0) if v == NEG_INF else mpmath.exp(v)
                         for v in self.log_e_tilde)

    def satisfies_newton(self) -> bool:
        """Check ``e~_i**2 >= e~_{i-1} e~_{i+1}`` on the positive range."""
        top = self.positive_count
        if self.exact:
            e = self.e_tilde_exact
            return all(e[i] ** 2 >= e[i - 1] * e[i + 1] for i in range(1, top))
        L = self.log_e_tilde
        slack = mpmath.mpf(2) ** (-self.prec + 16)
        with mpmath.workprec(self.prec):
            return all(2 * L[i] - L[i - 1] - L[i + 1] >= -slack * (1 + abs(L[i]))
                       for i in range(1, top))

    def __eq__(self, other):
        if not isinstance(other, SymmetricProfile):
            return NotImplemented
        if self.exact and other.exact:
            return self.e_tilde_exact == other.e_tilde_exact
        return (self.degree, self.zero_count, self.log_e_tilde) == (
            other.degree, other.zero_count, other.log_e_tilde)

    __hash__ = None


@dataclass(frozen=True)
class BigPoly:
    """Monic polynomial ``sum_i coeffs[i] * x**(d - i)``.

    Coefficients are exact fractions, or big-floats at ``prec`` bits.
    """

    coeffs: tuple
    prec: int | None = None

    def __post_init__(self):
        cs = [to_scalar(c) for c in self.coeffs]
        if len(cs) < 2:
            raise InputValidationError("polynomial degree must be >= 1")
        if cs[0] != 1:
            raise InputValidationError("polynomial must be monic")
        if all(is_exact(c) for c in cs) and self.prec is None:
            object.__setattr__(self, "coeffs", tuple(cs))
        else:
            prec = self.prec or DEFAULT_PREC
            object.__setattr__(self, "prec", prec)
            object.__setattr__(self, "coeffs", tuple(to_mpf(c, prec) for c in cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return self.prec is None

    def __call__(self, x):
        if self.exact and is_exact(x):
            acc = Fraction(0)
            for c in self.coeffs:
                acc = acc * x + c
            return acc
        with mpmath.workprec(self.prec or DEFAULT_PREC):
            x = to_mpf(x, self.prec or DEFAULT_PREC)
            acc = mpmath.mpf(0)
            for c in self.coeffs:
                acc = acc * x + c
            return acc

    def has_alternating_signs(self) -> bool:
        return all((-1) ** i * c >= 0 for i, c in enumerate(self.coeffs))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def elementary_symmetric(roots: RootMultiset | Iterable, prec: int = DEFAULT_PREC) -> tuple:
    """``(e_0, ..., e_d)`` by expanding ``prod (x + lambda)`` one root at a time."""
    if not isinstance(roots, RootMultiset):
        roots = RootMultiset(tuple(roots))
    d = roots.degree
    if roots.exact:
        e = [Fraction(1)] + [Fraction(0)] * d
        for j, lam in enumerate(roots.roots, start=1):
            if lam == 0:
                continue
            for i in range(j, 0, -1):
                e[i] += lam * e[i - 1]
        return tuple(e)
    with mpmath.workprec(prec):
        e = [mpmath.mpf(1)] + [mpmath.mpf(0)] * d
        for j, lam in enumerate(roots.roots, start=1):
            if lam == 0:
                continue
            for i in range(j, 0, -1):
                e[i] += lam * e[i - 1]
        return tuple(e)


def profile_from_roots(roots: RootMultiset | Iterable, prec: int = DEFAULT_PREC) -> SymmetricProfile:
    if not isinstance(roots, RootMultiset):
        roots = RootMultiset(tuple(roots))
    d = roots.degree
    e = elementary_symmetric(roots, prec)
    if roots.exact:
        return SymmetricProfile.from_exact([e[i] / comb(d, i) for i in range(d + 1)], prec)
    k = roots.zero_count
    with mpmath.workprec(prec):
        logs = [mpmath.mpf(0)]
        for i in range(1, d + 1):
            # zero roots are exact zeros, so the suffix is exactly zero too
            logs.append(NEG_INF if i > d - k else mpmath.log(e[i]) - mpmath.log(comb(d, i)))
    return SymmetricProfile(d, k, tuple(logs), None, prec)


def profile_to_coefficients(profile: SymmetricProfile, prec: int | None = None) -> BigPoly:
    """Coefficients ``(-1)**i C(d, i) e~_i``; exact whenever the profile is.

    For log-domain profiles the coefficients are big-floats at ``prec`` bits.
    If the coefficients' dynamic range (in bits) exceeds the precision
    budget, :class:`PrecisionBudgetExceeded` is raised.
    """
    d = profile.degree
    if profile.exact and prec is None:
        return BigPoly(tuple((-1) ** i * comb(d, i) * v
                             for i, v in enumerate(profile.e_tilde_exact)))
    prec = prec or profile.prec
    with mpmath.workprec(prec + 32):
        log2c = [(v + mpmath.log(comb(d, i))) / mpmath.ln2
                 for i, v in enumerate(profile.log_e_tilde) if v != NEG_INF]
        span = max(log2c) - min(log2c)
    if span > prec:
        raise PrecisionBudgetExceeded(
            f"coefficient range spans {float(span):.0f} bits, budget is {prec}")
    with mpmath.workprec(prec):
        cs = [mpmath.mpf(0) if v == NEG_INF else (-1) ** i * comb(d, i) * mpmath.exp(v)
              for i, v in enumerate(profile.log_e_tilde)]
        cs[0] = mpmath.mpf(1)
    return BigPoly(tuple(cs), prec)


def coefficients_to_profile(poly: BigPoly, prec: int = DEFAULT_PREC) -> SymmetricProfile:
    """Inverse of :func:`profile_to_coefficients`.

    Raises :class:`SignPatternError` if some recovered ``e~_i`` is negative
    or a positive value follows a zero.
    """
    d = poly.degree
    values = [(-1) ** i * c / comb(d, i) for i, c in enumerate(poly.coeffs)]
    if any(v < 0 for v in values):
        raise SignPatternError("coefficients do not alternate in sign")
    positive = [i for i, v in enumerate(values) if v > 0]
    if positive != list(range(len(positive))):
        raise SignPatternError("a positive normalized value follows a zero one")
    if poly.exact:
        return SymmetricProfile.from_exact(values, prec)
    with mpmath.workprec(prec):
        logs = [NEG_INF if v == 0 else mpmath.log(v) for v in values]
        logs[0] = mpmath.mpf(0)
    return SymmetricProfile.from_log(logs, prec)


def _iroot(n: int, m: int) -> int | None:
    """Exact integer m-th root of ``n >= 0``, or None."""
    if n < 2:
        return n
    x = 1 << (-(-n.bit_length() // m))
    while True:
        y = ((m - 1) * x + n // x ** (m - 1)) // m
        if y >= x:
            break
        x = y
    for c in (x, x + 1):
        if c ** m == n:
            return c
    return None


def _exact_power(q: Fraction, alpha: Fraction):
    if q == 0:
        return Fraction(0)
    p, m = alpha.numerator, alpha.denominator
    q = q ** p
    num, den = _iroot(q.numerator, m), _iroot(q.denominator, m)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def root_power_map(roots: RootMultiset, alpha, prec: int = DEFAULT_PREC) -> RootMultiset:
    """Map every root to ``lambda**alpha`` (``alpha > 0``, ``0**alpha = 0``).

    Stays exact when the roots and ``alpha`` are rational and every power is
    itself rational; otherwise evaluates ``exp(alpha * log lambda)``.
    """
    alpha = to_scalar(alpha)
    if alpha <= 0:
        raise InputValidationError("alpha must be positive")
    if roots.exact and is_exact(alpha):
        mapped = [_exact_power(r, alpha) for r in roots.roots]
        if all(m is not None for m in mapped):
            return RootMultiset(tuple(mapped))
    with mpmath.workprec(prec):
        a = to_mpf(alpha, prec)
        out = [mpmath.mpf(0) if r == 0 else mpmath.exp(a * mpmath.log(to_mpf(r, prec)))
               for r in roots.roots]
    return RootMultiset(tuple(out))


def expand_roots(roots: RootMultiset | Iterable, prec: int | None = None) -> BigPoly:
    """Coefficients of ``prod (x - lambda)`` by direct expansion."""
    if not isinstance(roots, RootMultiset):
        roots = RootMultiset(tuple(roots))
    if roots.exact and prec is None:
        cs = [Fraction(1)]
        for lam in roots.roots:
            cs = [a - lam * b for a, b in zip(cs + [Fraction(0)], [Fraction(0)] + cs)]
        return BigPoly(tuple(cs))
    prec = prec or DEFAULT_PREC
    with mpmath.workprec(prec):
        cs = [mpmath.mpf(1)]
        for lam in roots.roots:
            lam = to_mpf(lam, prec)
            cs = [a - lam * b for a, b in zip(cs + [0], [0] + cs)]
    return BigPoly(tuple(cs), prec)
